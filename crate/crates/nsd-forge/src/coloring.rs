//! Edge-coloring data model, induced vertex sums, and the quasi-majority /
//! majority / neighbor-sum-distinguishing predicates with a structured
//! verification report.
//!
//! Colors are 1-based integers in `[k]`, aligned to the lexicographically
//! sorted edge list of the host graph. Color 0 is the internal
//! "uncolored" sentinel used by search code.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Which per-vertex cap an edge-coloring must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "qm")]
    QuasiMajority,
    #[serde(rename = "majority")]
    Majority,
}

impl Mode {
    /// Largest admissible number of equal-colored edges at a vertex of degree `d`.
    pub fn cap(self, d: usize) -> usize {
        match self {
            Mode::QuasiMajority => d.div_ceil(2),
            Mode::Majority => d / 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::QuasiMajority => "qm",
            Mode::Majority => "majority",
        }
    }
}

/// Total (or, during search, partial) assignment of colors to edges,
/// with per-vertex color-count tables maintained incrementally.
#[derive(Debug, Clone)]
pub struct EdgeColoring {
    k: usize,
    colors: Vec<usize>,
    /// counts[v][c] = number of edges at v currently colored c (c in 1..=k)
    counts: Vec<Vec<u32>>,
    /// sum of colors of colored edges at each vertex
    sums: Vec<u64>,
    /// number of colored edges at each vertex
    colored_deg: Vec<usize>,
}

impl PartialEq for EdgeColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.colors == other.colors
    }
}
impl Eq for EdgeColoring {}

impl EdgeColoring {
    /// All edges uncolored; `k` is the palette bound.
    pub fn uncolored(g: &Graph, k: usize) -> EdgeColoring {
        EdgeColoring {
            k,
            colors: vec![0; g.m()],
            counts: vec![vec![0; k + 1]; g.n()],
            sums: vec![0; g.n()],
            colored_deg: vec![0; g.n()],
        }
    }

    /// Builds a total coloring from colors aligned to the sorted edge list.
    pub fn from_colors(g: &Graph, k: usize, colors: &[usize]) -> Result<EdgeColoring> {
        if colors.len() != g.m() {
            return Err(Error::invalid(format!(
                "coloring has {} entries but the graph has {} edges",
                colors.len(),
                g.m()
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::invalid(format!("color {c} outside palette [1,{k}]")));
        }
        let mut col = EdgeColoring::uncolored(g, k);
        for (e, &c) in colors.iter().enumerate() {
            col.set_color(g, e, c);
        }
        Ok(col)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> usize {
        self.colors[edge]
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    pub fn max_color(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Number of edges at `v` currently colored `c`.
    pub fn count(&self, v: usize, c: usize) -> u32 {
        self.counts[v][c]
    }

    /// Incrementally maintained sum of colors at `v`.
    pub fn sum(&self, v: usize) -> u64 {
        self.sums[v]
    }

    pub fn colored_degree(&self, v: usize) -> usize {
        self.colored_deg[v]
    }

    /// Sets (or clears, with `c = 0`) the color of an edge, updating the
    /// per-vertex tables.
    pub fn set_color(&mut self, g: &Graph, edge: usize, c: usize) {
        debug_assert!(c <= self.k);
        let (u, v) = g.endpoints(edge);
        let old = self.colors[edge];
        if old != 0 {
            for w in [u, v] {
                self.counts[w][old] -= 1;
                self.sums[w] -= old as u64;
                self.colored_deg[w] -= 1;
            }
        }
        self.colors[edge] = c;
        if c != 0 {
            for w in [u, v] {
                self.counts[w][c] += 1;
                self.sums[w] += c as u64;
                self.colored_deg[w] += 1;
            }
        }
    }

    /// Re-widens the palette bound without touching the assignment.
    pub fn with_palette(mut self, k: usize) -> EdgeColoring {
        assert!(k >= self.max_color());
        for row in &mut self.counts {
            row.resize(k + 1, 0);
        }
        self.k = k;
        self
    }
}

/// Sum of incident edge colors for every vertex, recomputed from scratch.
/// Isolated vertices get 0. Errors on a partial coloring.
pub fn vertex_sums(g: &Graph, c: &EdgeColoring) -> Result<Vec<u64>> {
    if c.colors().len() != g.m() {
        return Err(Error::invalid("coloring does not match the graph's edge count"));
    }
    if !c.is_total() {
        return Err(Error::invalid("coloring is partial; every edge needs a color"));
    }
    let mut sums = vec![0u64; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let col = c.color(e) as u64;
        sums[u] += col;
        sums[v] += col;
    }
    Ok(sums)
}

/// True iff every vertex sees each color on at most ceil(d/2) incident edges.
pub fn is_quasi_majority(g: &Graph, c: &EdgeColoring) -> bool {
    mode_violations(g, c, Mode::QuasiMajority).is_empty()
}

/// True iff every vertex sees each color on at most floor(d/2) incident edges.
pub fn is_majority(g: &Graph, c: &EdgeColoring) -> bool {
    mode_violations(g, c, Mode::Majority).is_empty()
}

/// `(vertex, color)` pairs where the cap for `mode` is exceeded.
pub fn mode_violations(g: &Graph, c: &EdgeColoring, mode: Mode) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        let cap = mode.cap(g.degree(v)) as u32;
        let mut counts = vec![0u32; c.k() + 1];
        for &(_, e) in g.adj(v) {
            let col = c.color(e);
            if col != 0 {
                counts[col] += 1;
            }
        }
        for (col, &cnt) in counts.iter().enumerate().skip(1) {
            if cnt > cap {
                out.push((v, col));
            }
        }
    }
    out
}

/// True iff the induced vertex sums differ across every edge.
pub fn is_nsd(g: &Graph, c: &EdgeColoring) -> bool {
    nsd_violations(g, c).is_empty()
}

/// Edges whose endpoints receive equal sums.
pub fn nsd_violations(g: &Graph, c: &EdgeColoring) -> Vec<(usize, usize)> {
    let sums = match vertex_sums(g, c) {
        Ok(s) => s,
        Err(_) => return vec![(usize::MAX, usize::MAX)],
    };
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| sums[u] == sums[v])
        .collect()
}

/// Structured pass/fail of the nice / QM / majority / NSD predicates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub k: usize,
    pub nice: bool,
    pub quasi_majority: bool,
    pub majority: bool,
    pub nsd: bool,
    pub max_color: usize,
    pub pass: bool,
    pub sums: Vec<u64>,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Witnesses {
    /// single-edge components breaking niceness
    pub not_nice: Vec<(usize, usize)>,
    /// (vertex, color) pairs exceeding the ceil(d/2) cap
    pub quasi_majority: Vec<(usize, usize)>,
    /// (vertex, color) pairs exceeding the floor(d/2) cap
    pub majority: Vec<(usize, usize)>,
    /// edges with equal endpoint sums
    pub nsd: Vec<(usize, usize)>,
}

/// Checks all predicates and assembles the report. Failures are report
/// content, not errors. Overall pass requires niceness, the mode's cap,
/// the NSD property, and max color <= k.
pub fn verify(g: &Graph, c: &EdgeColoring, mode: Mode, k: usize) -> VerificationReport {
    let mut not_nice = Vec::new();
    for comp in g.components() {
        if comp.len() == 2 && g.degree(comp[0]) == 1 {
            not_nice.push((comp[0], comp[1]));
        }
    }
    let qm_w = mode_violations(g, c, Mode::QuasiMajority);
    let maj_w = mode_violations(g, c, Mode::Majority);
    let nsd_w = nsd_violations(g, c);
    let sums = vertex_sums(g, c).unwrap_or_default();
    let max_color = c.max_color();
    let nice = not_nice.is_empty();
    let quasi_majority = qm_w.is_empty();
    let majority = maj_w.is_empty();
    let nsd = nsd_w.is_empty();
    let mode_ok = match mode {
        Mode::QuasiMajority => quasi_majority,
        Mode::Majority => majority,
    };
    VerificationReport {
        mode,
        k,
        nice,
        quasi_majority,
        majority,
        nsd,
        max_color,
        pass: nice && mode_ok && nsd && max_color <= k,
        sums,
        witnesses: Witnesses { not_nice, quasi_majority: qm_w, majority: maj_w, nsd: nsd_w },
    }
}

/// Serialized form of a coloring: a JSON object with the palette size and
/// the colors aligned to the sorted edge list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub k: usize,
    pub colors: Vec<usize>,
}

/// Parses either the `{"k":..,"colors":[..]}` object or a bare JSON array.
pub fn parse_coloring(text: &str, g: &Graph) -> Result<EdgeColoring> {
    let doc: ColoringDoc = match serde_json::from_str::<ColoringDoc>(text) {
        Ok(doc) => doc,
        Err(_) => {
            let colors: Vec<usize> = serde_json::from_str(text)
                .map_err(|e| Error::Parse { offset: e.column().saturating_sub(1), message: e.to_string() })?;
            let k = colors.iter().copied().max().unwrap_or(2);
            ColoringDoc { k, colors }
        }
    };
    EdgeColoring::from_colors(g, doc.k, &doc.colors)
}

pub fn emit_coloring(c: &EdgeColoring) -> String {
    let doc = ColoringDoc { k: c.k(), colors: c.colors().to_vec() };
    let mut s = serde_json::to_string(&doc).expect("coloring serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec, Graph};

    fn k4() -> Graph {
        generate(&FamilySpec::Complete { n: 4 }).unwrap()
    }

    /// hand-checked 3-coloring of K4 with sums (5,4,6,7)
    pub(crate) const K4_COLORS: [usize; 6] = [1, 2, 2, 1, 2, 3];

    #[test]
    fn k4_reference_sums() {
        let g = k4();
        let c = EdgeColoring::from_colors(&g, 3, &K4_COLORS).unwrap();
        assert_eq!(vertex_sums(&g, &c).unwrap(), vec![5, 4, 6, 7]);
        assert!(is_quasi_majority(&g, &c));
        assert!(is_nsd(&g, &c));
        let report = verify(&g, &c, Mode::QuasiMajority, 3);
        assert!(report.pass);
    }

    #[test]
    fn monochromatic_p3_sums() {
        let g = generate(&FamilySpec::Path { n: 3 }).unwrap();
        let c = EdgeColoring::from_colors(&g, 1, &[1, 1]).unwrap();
        assert_eq!(vertex_sums(&g, &c).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn k6_majority_reference() {
        let g = generate(&FamilySpec::Complete { n: 6 }).unwrap();
        let colors = [1, 2, 2, 3, 1, 3, 1, 2, 3, 2, 1, 3, 4, 4, 4];
        let c = EdgeColoring::from_colors(&g, 4, &colors).unwrap();
        let mut sums = vertex_sums(&g, &c).unwrap();
        sums.sort_unstable();
        assert_eq!(sums, vec![9, 10, 11, 13, 14, 15]);
        assert!(is_majority(&g, &c));
        assert!(verify(&g, &c, Mode::Majority, 4).pass);
    }

    #[test]
    fn monochromatic_c4_is_not_qm() {
        let g = generate(&FamilySpec::Cycle { n: 4 }).unwrap();
        let c = EdgeColoring::from_colors(&g, 2, &[1, 1, 1, 1]).unwrap();
        assert!(!is_quasi_majority(&g, &c));
    }

    #[test]
    fn proper_coloring_is_qm() {
        // a proper edge coloring has all per-vertex counts equal to 1
        let g = generate(&FamilySpec::Cycle { n: 4 }).unwrap();
        // edges of C4 sorted: (0,1),(0,3),(1,2),(2,3)
        let c = EdgeColoring::from_colors(&g, 2, &[1, 2, 2, 1]).unwrap();
        assert!(is_quasi_majority(&g, &c));
    }

    #[test]
    fn degree_one_vertex_blocks_majority() {
        let g = generate(&FamilySpec::Path { n: 3 }).unwrap();
        for colors in [[1, 2], [1, 1], [2, 1]] {
            let c = EdgeColoring::from_colors(&g, 2, &colors).unwrap();
            assert!(!is_majority(&g, &c));
        }
    }

    #[test]
    fn k2_never_nsd() {
        let g = Graph::build(2, &[(0, 1)]).unwrap();
        for col in 1..4 {
            let c = EdgeColoring::from_colors(&g, 3, &[col]).unwrap();
            assert!(!is_nsd(&g, &c));
        }
    }

    #[test]
    fn monochromatic_triangle_not_nsd() {
        let g = generate(&FamilySpec::Cycle { n: 3 }).unwrap();
        let c = EdgeColoring::from_colors(&g, 1, &[1, 1, 1]).unwrap();
        assert!(!is_nsd(&g, &c));
    }

    #[test]
    fn c5_qm_four_coloring_fails_with_nsd_witness() {
        let g = generate(&FamilySpec::Cycle { n: 5 }).unwrap();
        // around the cycle 0-1-2-3-4-0: colors 1,2,1,2,3; every vertex sees
        // two distinct colors, so the QM cap holds while sums collide
        let mut colors = vec![0usize; 5];
        let cyc = [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (0, 4)];
        for (i, &(u, v)) in cyc.iter().enumerate() {
            colors[g.edge_index(u, v).unwrap()] = [1, 2, 1, 2, 3][i];
        }
        let c = EdgeColoring::from_colors(&g, 4, &colors).unwrap();
        let report = verify(&g, &c, Mode::QuasiMajority, 4);
        assert!(report.quasi_majority);
        assert!(!report.pass);
        assert!(!report.witnesses.nsd.is_empty());
    }

    #[test]
    fn parse_and_emit_coloring() {
        let g = k4();
        let c = parse_coloring("[1,2,2,1,2,3]", &g).unwrap();
        assert_eq!(c.colors(), &K4_COLORS);
        let text = emit_coloring(&c);
        let back = parse_coloring(&text, &g).unwrap();
        assert_eq!(back, c);
        assert!(parse_coloring("[1]", &g).is_err());
        assert!(parse_coloring("[0,1,1,1,1,1]", &g).is_err());
    }

    #[test]
    fn incremental_tables_match_recomputation() {
        let g = generate(&FamilySpec::Complete { n: 5 }).unwrap();
        let mut c = EdgeColoring::uncolored(&g, 3);
        // arbitrary mutation sequence including recolors and clears
        let moves = [(0, 1), (1, 2), (2, 3), (0, 2), (3, 1), (3, 0), (3, 3), (9, 2), (4, 1)];
        for &(e, col) in &moves {
            c.set_color(&g, e, col);
        }
        for e in 0..g.m() {
            if c.color(e) == 0 {
                c.set_color(&g, e, 1 + e % 3);
            }
        }
        let fresh = vertex_sums(&g, &c).unwrap();
        for v in 0..g.n() {
            assert_eq!(c.sum(v), fresh[v]);
            let mut counts = vec![0u32; 4];
            for &(_, e) in g.adj(v) {
                counts[c.color(e)] += 1;
            }
            for col in 1..=3 {
                assert_eq!(c.count(v, col), counts[col]);
            }
        }
    }

    #[test]
    fn report_false_flags_have_witnesses() {
        let g = Graph::build(2, &[(0, 1)]).unwrap();
        let c = EdgeColoring::from_colors(&g, 2, &[1]).unwrap();
        let rep = verify(&g, &c, Mode::QuasiMajority, 2);
        assert!(!rep.nice && !rep.witnesses.not_nice.is_empty());
        assert!(!rep.nsd && !rep.witnesses.nsd.is_empty());
        assert!(!rep.majority && !rep.witnesses.majority.is_empty());
    }
}
