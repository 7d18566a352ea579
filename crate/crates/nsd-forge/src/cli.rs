//! Command-level operations behind the binary: coloring with a chosen
//! strategy, exact index computation, verification, generation, and the
//! family table reproduction with oracle cross-checks.

use crate::bipartite::qmnsd_six;
use crate::bounded::qmnsd_maxdeg4;
use crate::coloring::{verify, EdgeColoring, Mode, VerificationReport};
use crate::error::{Error, Result};
use crate::families;
use crate::graph::{self, DetectedFamily, FamilySpec, Graph};
use crate::kalkowski::{kalkowski_mnsd18, kalkowski_qmnsd12, qmnsd_delta_bound};
use crate::majority::{mnsd_complete, mnsd_complete_bipartite};
use crate::solver::{find_coloring, min_index, IndexOutcome, SearchBudget, SearchOutcome};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Family,
    Bipartite6,
    Maxdeg4,
    Kalkowski,
    DeltaBound,
    Exact,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Family => "family",
            Strategy::Bipartite6 => "bipartite6",
            Strategy::Maxdeg4 => "maxdeg4",
            Strategy::Kalkowski => "kalkowski",
            Strategy::DeltaBound => "delta-bound",
            Strategy::Exact => "exact",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ColorOutput {
    pub strategy: &'static str,
    pub k: usize,
    pub coloring: crate::coloring::ColoringDoc,
    pub report: VerificationReport,
}

/// Colors the graph with the requested strategy and verifies the result
/// before returning it. `k_request` only matters for the exact strategy.
pub fn run_color(
    g: &Graph,
    mode: Mode,
    strategy: Strategy,
    k_request: Option<usize>,
    budget: &SearchBudget,
) -> Result<ColorOutput> {
    let (k, coloring) = match strategy {
        Strategy::Family => color_family_mode(g, mode)?.ok_or_else(|| {
            Error::precondition("graph is not a recognized family for this mode")
        })?,
        Strategy::Bipartite6 => {
            require_qm(mode, strategy)?;
            let c = qmnsd_six(g)?;
            (6, c)
        }
        Strategy::Maxdeg4 => {
            require_qm(mode, strategy)?;
            let c = qmnsd_maxdeg4(g)?;
            (7, c)
        }
        Strategy::Kalkowski => match mode {
            Mode::QuasiMajority => (12, kalkowski_qmnsd12(g)?),
            Mode::Majority => (18, kalkowski_mnsd18(g)?),
        },
        Strategy::DeltaBound => {
            require_qm(mode, strategy)?;
            let c = qmnsd_delta_bound(g)?;
            ((3 * g.max_degree() + 4).div_ceil(2).max(2), c)
        }
        Strategy::Exact => match k_request {
            Some(k) => match find_coloring(g, mode, k, budget)? {
                SearchOutcome::Found(c) => (k, c),
                SearchOutcome::None => {
                    return Err(Error::precondition(format!("no coloring exists at k={k}")))
                }
                SearchOutcome::Unknown => {
                    return Err(Error::precondition("search budget exhausted"))
                }
            },
            None => match min_index(g, mode, budget)? {
                IndexOutcome::Exact { k, witness } => (k, witness),
                IndexOutcome::Unknown => {
                    return Err(Error::precondition("search budget exhausted"))
                }
            },
        },
        Strategy::Auto => auto_color(g, mode, budget)?,
    };
    let report = verify(g, &coloring, mode, k);
    if !report.pass {
        return Err(Error::invariant("emitted coloring failed verification"));
    }
    Ok(ColorOutput {
        strategy: strategy.name(),
        k,
        coloring: crate::coloring::ColoringDoc { k: coloring.k(), colors: coloring.colors().to_vec() },
        report,
    })
}

fn require_qm(mode: Mode, strategy: Strategy) -> Result<()> {
    if mode != Mode::QuasiMajority {
        return Err(Error::invalid(format!(
            "strategy {} only produces quasi-majority colorings",
            strategy.name()
        )));
    }
    Ok(())
}

/// Family constructions per mode. Majority mode covers the families whose
/// exact values are known (complete, balanced/unbalanced complete
/// bipartite) plus cycles, where the two caps coincide.
fn color_family_mode(g: &Graph, mode: Mode) -> Result<Option<(usize, EdgeColoring)>> {
    match mode {
        Mode::QuasiMajority => families::color_family(g),
        Mode::Majority => {
            let Some(found) = graph::detect_family(g) else {
                return Ok(None);
            };
            match found {
                DetectedFamily::Complete => mnsd_complete(g.n()).map(Some),
                DetectedFamily::CompleteBipartite(a, b) if a.len() >= 2 && b.len() >= 2 => {
                    let (k, canon) = mnsd_complete_bipartite(a.len(), b.len())?;
                    let canon_g = crate::graph::generate(&FamilySpec::CompleteBipartite {
                        n: a.len(),
                        m: b.len(),
                    })?;
                    let mut map = a.clone();
                    map.extend_from_slice(&b);
                    let mut c = EdgeColoring::uncolored(g, canon.k());
                    for (e, &(u, v)) in canon_g.edges().iter().enumerate() {
                        let target = g.edge_index(map[u], map[v]).expect("mapped edge");
                        c.set_color(g, target, canon.color(e));
                    }
                    Ok(Some((k, c)))
                }
                DetectedFamily::Cycle(_) => families::color_family(g),
                _ => Ok(None),
            }
        }
    }
}

/// Cheapest applicable constructor: family, then bipartite, then the
/// degree-driven algorithms with the smaller bound.
fn auto_color(g: &Graph, mode: Mode, budget: &SearchBudget) -> Result<(usize, EdgeColoring)> {
    let _ = budget;
    if let Some(out) = color_family_mode(g, mode)? {
        return Ok(out);
    }
    match mode {
        Mode::QuasiMajority => {
            if g.bipartition().is_some() {
                return Ok((6, qmnsd_six(g)?));
            }
            if g.max_degree() <= 4 {
                return Ok((7, qmnsd_maxdeg4(g)?));
            }
            let delta_k = (3 * g.max_degree() + 4).div_ceil(2);
            if delta_k < 12 {
                Ok((delta_k, qmnsd_delta_bound(g)?))
            } else {
                Ok((12, kalkowski_qmnsd12(g)?))
            }
        }
        Mode::Majority => Ok((18, kalkowski_mnsd18(g)?)),
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum IndexOutput {
    Exact { k: usize, witness: crate::coloring::ColoringDoc },
    Unknown { outcome: &'static str },
}

pub fn run_index(g: &Graph, mode: Mode, budget: &SearchBudget) -> Result<IndexOutput> {
    Ok(match min_index(g, mode, budget)? {
        IndexOutcome::Exact { k, witness } => IndexOutput::Exact {
            k,
            witness: crate::coloring::ColoringDoc { k: witness.k(), colors: witness.colors().to_vec() },
        },
        IndexOutcome::Unknown => IndexOutput::Unknown { outcome: "unknown" },
    })
}

// ---------------------------------------------------------------------------
// theorem table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TheoremsConfig {
    pub max_path: usize,
    pub max_cycle: usize,
    pub max_complete: usize,
    pub max_bipartite: usize,
    pub trees: usize,
    pub max_tree_n: usize,
    pub seed: u64,
    /// oracle rows are attempted only up to this edge count
    pub oracle_edge_limit: usize,
    pub budget: SearchBudget,
}

impl Default for TheoremsConfig {
    fn default() -> Self {
        TheoremsConfig {
            max_path: 10,
            max_cycle: 12,
            max_complete: 6,
            max_bipartite: 4,
            trees: 200,
            max_tree_n: 12,
            seed: 0,
            oracle_edge_limit: 12,
            budget: SearchBudget::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub enum OracleCell {
    #[serde(rename = "k")]
    Exact(usize),
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "unknown")]
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremRow {
    pub family: String,
    pub params: String,
    pub constructed_k: usize,
    pub oracle: OracleCell,
    /// "ok", "MISMATCH", or "skip"
    pub matched: String,
}

impl TheoremRow {
    pub fn tsv(&self) -> String {
        let oracle = match self.oracle {
            OracleCell::Exact(k) => k.to_string(),
            OracleCell::Skipped => "-".into(),
            OracleCell::Unknown => "unknown".into(),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.family, self.params, self.constructed_k, oracle, self.matched
        )
    }
}

struct Instance {
    family: &'static str,
    params: String,
    mode: Mode,
    graph: Graph,
    constructed_k: usize,
}

fn instances(cfg: &TheoremsConfig) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 3..=cfg.max_path {
        out.push(Instance {
            family: "path",
            params: format!("n={n}"),
            mode: Mode::QuasiMajority,
            graph: crate::graph::generate(&FamilySpec::Path { n })?,
            constructed_k: families::color_path(n)?.0,
        });
    }
    for n in 3..=cfg.max_cycle {
        out.push(Instance {
            family: "cycle",
            params: format!("n={n}"),
            mode: Mode::QuasiMajority,
            graph: crate::graph::generate(&FamilySpec::Cycle { n })?,
            constructed_k: families::color_cycle(n)?.0,
        });
    }
    for n in 3..=cfg.max_complete {
        out.push(Instance {
            family: "complete",
            params: format!("n={n}"),
            mode: Mode::QuasiMajority,
            graph: crate::graph::generate(&FamilySpec::Complete { n })?,
            constructed_k: families::color_complete(n)?.0,
        });
        out.push(Instance {
            family: "mnsd-complete",
            params: format!("n={n}"),
            mode: Mode::Majority,
            graph: crate::graph::generate(&FamilySpec::Complete { n })?,
            constructed_k: mnsd_complete(n)?.0,
        });
    }
    for n in 1..=cfg.max_bipartite {
        for m in n..=cfg.max_bipartite {
            if (n, m) == (1, 1) {
                continue;
            }
            out.push(Instance {
                family: "complete-bipartite",
                params: format!("n={n} m={m}"),
                mode: Mode::QuasiMajority,
                graph: crate::graph::generate(&FamilySpec::CompleteBipartite { n, m })?,
                constructed_k: families::color_complete_bipartite(n, m)?.0,
            });
            if n >= 2 {
                out.push(Instance {
                    family: "mnsd-complete-bipartite",
                    params: format!("n={n} m={m}"),
                    mode: Mode::Majority,
                    graph: crate::graph::generate(&FamilySpec::CompleteBipartite { n, m })?,
                    constructed_k: mnsd_complete_bipartite(n, m)?.0,
                });
            }
        }
    }
    for i in 0..cfg.trees {
        let seed = cfg.seed.wrapping_add(i as u64);
        let n = 3 + (seed.wrapping_mul(0x9e3779b97f4a7c15) >> 33) as usize % (cfg.max_tree_n - 2);
        let t = crate::graph::random_tree(n, seed)?;
        out.push(Instance {
            family: "tree",
            params: format!("n={n} seed={seed}"),
            mode: Mode::QuasiMajority,
            graph: t.clone(),
            constructed_k: families::color_tree(&t)?.0,
        });
    }
    Ok(out)
}

/// One row per instance: the family construction's palette against the
/// exact index where the oracle budget allows. Budget exhaustion is a
/// skipped row, never a refutation.
pub fn run_check_theorems(cfg: &TheoremsConfig) -> Result<(Vec<TheoremRow>, bool)> {
    let instances = instances(cfg)?;
    let budget = cfg.budget.clone();
    let limit = cfg.oracle_edge_limit;
    let rows: Vec<Result<TheoremRow>> = crate::parallel::map(instances, |inst| {
        let oracle = if inst.graph.m() <= limit {
            match min_index(&inst.graph, inst.mode, &budget)? {
                IndexOutcome::Exact { k, .. } => OracleCell::Exact(k),
                IndexOutcome::Unknown => OracleCell::Unknown,
            }
        } else {
            OracleCell::Skipped
        };
        let matched = match oracle {
            OracleCell::Exact(k) if k == inst.constructed_k => "ok".to_string(),
            OracleCell::Exact(_) => "MISMATCH".to_string(),
            _ => "skip".to_string(),
        };
        Ok(TheoremRow {
            family: inst.family.to_string(),
            params: inst.params.clone(),
            constructed_k: inst.constructed_k,
            oracle,
            matched,
        })
    });
    let mut table = Vec::with_capacity(rows.len());
    for row in rows {
        table.push(row?);
    }
    table.sort_by(|a, b| (&a.family, &a.params).cmp(&(&b.family, &b.params)));
    let all_ok = table.iter().all(|r| r.matched != "MISMATCH");
    Ok((table, all_ok))
}
