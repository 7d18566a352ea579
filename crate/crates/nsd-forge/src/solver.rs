//! Exhaustive branch-and-bound oracle: exact quasi-majority / majority
//! NSD indices, feasibility at a fixed palette size, and completion of
//! partially frozen colorings.
//!
//! Search order is fixed (edges lexicographic, colors ascending), so the
//! witness returned for a feasible instance is the lexicographically
//! smallest one. Budget exhaustion is a first-class outcome, distinct from
//! a proven "none".

use crate::coloring::{EdgeColoring, Mode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// Caps on the exhaustive search.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// palette ceiling for `min_index`
    pub max_k: usize,
    /// search-node cap (color attempts)
    pub node_limit: u64,
    /// wall-clock cap
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_k: 18, node_limit: 2_000_000_000, time_limit: Duration::from_secs(120) }
    }
}

impl SearchBudget {
    pub fn new(max_k: usize, node_limit: u64, time_limit: Duration) -> Self {
        SearchBudget { max_k, node_limit, time_limit }
    }
}

/// Result of a fixed-k feasibility search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// a coloring passing all checks at the requested palette size
    Found(EdgeColoring),
    /// exhaustive proof that none exists
    None,
    /// budget ran out before the search finished; never reported as "none"
    Unknown,
}

/// Result of an exact index computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexOutcome {
    Exact { k: usize, witness: EdgeColoring },
    Unknown,
}

/// "sigma(vertex) must avoid these values" side constraint.
#[derive(Debug, Clone)]
pub struct SumConstraint {
    pub vertex: usize,
    pub avoid: Vec<u64>,
}

fn check_preconditions(g: &Graph, mode: Mode) -> Result<()> {
    if !g.is_nice() {
        return Err(Error::invalid("graph has a single-edge component; no NSD coloring exists"));
    }
    if mode == Mode::Majority && g.n() > 0 && g.m() > 0 && g.min_degree() < 2 {
        return Err(Error::precondition("majority colorings need minimum degree 2"));
    }
    Ok(())
}

/// Searches for a coloring passing `verify(g, c, mode, k)`.
pub fn find_coloring(g: &Graph, mode: Mode, k: usize, budget: &SearchBudget) -> Result<SearchOutcome> {
    check_preconditions(g, mode)?;
    let partial = EdgeColoring::uncolored(g, k);
    search(g, partial, &[], mode, k, &[], budget)
}

/// Smallest k admitting a coloring, found by iterating k = 2, 3, ...
pub fn min_index(g: &Graph, mode: Mode, budget: &SearchBudget) -> Result<IndexOutcome> {
    check_preconditions(g, mode)?;
    for k in 2..=budget.max_k {
        match find_coloring(g, mode, k, budget)? {
            SearchOutcome::Found(witness) => return Ok(IndexOutcome::Exact { k, witness }),
            SearchOutcome::None => continue,
            SearchOutcome::Unknown => return Ok(IndexOutcome::Unknown),
        }
    }
    Ok(IndexOutcome::Unknown)
}

/// Extends a partial coloring, honoring the colors of `frozen` edges and the
/// extra sum constraints. Colors on non-frozen edges of `partial` are ignored.
pub fn complete_partial(
    g: &Graph,
    partial: &EdgeColoring,
    frozen: &[usize],
    mode: Mode,
    k: usize,
    constraints: &[SumConstraint],
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    check_preconditions(g, mode)?;
    for &e in frozen {
        if e >= g.m() {
            return Err(Error::invalid(format!("frozen edge index {e} out of range")));
        }
        let c = partial.color(e);
        if c == 0 || c > k {
            return Err(Error::invalid(format!(
                "frozen edge {e} must carry a color in [1,{k}], found {c}"
            )));
        }
    }
    for sc in constraints {
        if sc.vertex >= g.n() {
            return Err(Error::invalid("sum constraint on an out-of-range vertex"));
        }
    }
    let mut start = EdgeColoring::uncolored(g, k);
    for &e in frozen {
        start.set_color(g, e, partial.color(e));
    }
    search(g, start, frozen, mode, k, constraints, budget)
}

struct Shared {
    nodes: AtomicU64,
    node_limit: u64,
    deadline: Instant,
    stop: AtomicBool,
}

impl Shared {
    /// true when the budget is gone
    fn charge(&self, amount: u64) -> bool {
        let seen = self.nodes.fetch_add(amount, Ordering::Relaxed) + amount;
        if seen > self.node_limit {
            return true;
        }
        if seen / 4096 != (seen - amount) / 4096 && Instant::now() > self.deadline {
            return true;
        }
        false
    }
}

enum Dfs {
    Found,
    Exhausted,
    Budget,
    Stopped,
}

struct State<'a> {
    g: &'a Graph,
    k: usize,
    caps: Vec<u32>,
    coloring: EdgeColoring,
    free: &'a [usize],
    avoid: &'a [Vec<u64>],
    shared: &'a Shared,
    local_nodes: u64,
}

impl State<'_> {
    fn feasible(&mut self, pos: usize) -> Dfs {
        let Some(&edge) = self.free.get(pos) else {
            return Dfs::Found;
        };
        let (u, v) = self.g.endpoints(edge);
        for c in 1..=self.k {
            self.local_nodes += 1;
            if self.local_nodes >= 1024 {
                if self.shared.charge(self.local_nodes) {
                    return Dfs::Budget;
                }
                if self.shared.stop.load(Ordering::Relaxed) {
                    return Dfs::Stopped;
                }
                self.local_nodes = 0;
            }
            if self.coloring.count(u, c) >= self.caps[u] || self.coloring.count(v, c) >= self.caps[v] {
                continue;
            }
            self.coloring.set_color(self.g, edge, c);
            if self.saturation_ok(u) && self.saturation_ok(v) {
                match self.feasible(pos + 1) {
                    Dfs::Exhausted => {}
                    other => return other,
                }
            }
            self.coloring.set_color(self.g, edge, 0);
        }
        Dfs::Exhausted
    }

    /// NSD and sum-avoidance checks fire as soon as a vertex saturates.
    fn saturation_ok(&self, w: usize) -> bool {
        if self.coloring.colored_degree(w) != self.g.degree(w) {
            return true;
        }
        let sw = self.coloring.sum(w);
        if self.avoid[w].contains(&sw) {
            return false;
        }
        for &(x, _) in self.g.adj(w) {
            if self.coloring.colored_degree(x) == self.g.degree(x) && self.coloring.sum(x) == sw {
                return false;
            }
        }
        true
    }
}

fn search(
    g: &Graph,
    start: EdgeColoring,
    frozen: &[usize],
    mode: Mode,
    k: usize,
    constraints: &[SumConstraint],
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    let caps: Vec<u32> = (0..g.n()).map(|v| mode.cap(g.degree(v)) as u32).collect();
    // a vertex needing more monochromatic slack than k colors provide is a
    // proof of infeasibility on its own
    for v in 0..g.n() {
        if g.degree(v) as u64 > k as u64 * caps[v] as u64 {
            return Ok(SearchOutcome::None);
        }
    }
    // the frozen part must itself respect the caps
    for &e in frozen {
        let (u, v) = g.endpoints(e);
        let c = start.color(e);
        if start.count(u, c) > caps[u] || start.count(v, c) > caps[v] {
            return Ok(SearchOutcome::None);
        }
    }
    let mut avoid = vec![Vec::new(); g.n()];
    for sc in constraints {
        avoid[sc.vertex].extend_from_slice(&sc.avoid);
    }
    let mut free: Vec<usize> = (0..g.m()).filter(|e| !frozen.contains(e)).collect();
    free.sort_unstable();

    // fully frozen vertices need their saturation checks run up front
    for v in 0..g.n() {
        if start.colored_degree(v) == g.degree(v) {
            let sv = start.sum(v);
            if avoid[v].contains(&sv) {
                return Ok(SearchOutcome::None);
            }
            for &(x, _) in g.adj(v) {
                if start.colored_degree(x) == g.degree(x) && start.sum(x) == sv && g.degree(v) > 0 {
                    return Ok(SearchOutcome::None);
                }
            }
        }
    }

    let shared = Shared {
        nodes: AtomicU64::new(0),
        node_limit: budget.node_limit,
        deadline: Instant::now() + budget.time_limit,
        stop: AtomicBool::new(false),
    };

    #[cfg(feature = "parallel")]
    {
        if crate::parallel::threads() > 1 && free.len() >= 12 && k >= 3 {
            return Ok(search_root_split(g, start, &free, k, &caps, &avoid, &shared));
        }
    }

    let mut state =
        State { g, k, caps, coloring: start, free: &free, avoid: &avoid, shared: &shared, local_nodes: 0 };
    Ok(match state.feasible(0) {
        Dfs::Found => SearchOutcome::Found(state.coloring),
        Dfs::Exhausted => SearchOutcome::None,
        Dfs::Budget | Dfs::Stopped => SearchOutcome::Unknown,
    })
}

/// Splits the search on the first free edge's colors. Each branch runs the
/// same sequential order, so the merged result (smallest branch color that
/// finds a witness) equals the sequential lexicographic answer.
#[cfg(feature = "parallel")]
fn search_root_split(
    g: &Graph,
    start: EdgeColoring,
    free: &[usize],
    k: usize,
    caps: &[u32],
    avoid: &[Vec<u64>],
    shared: &Shared,
) -> SearchOutcome {
    use std::sync::atomic::AtomicUsize;
    let first = free[0];
    let rest = &free[1..];
    let best_found = AtomicUsize::new(usize::MAX);
    let branches: Vec<(usize, SearchOutcome)> = crate::parallel::map((1..=k).collect(), |&c| {
        if best_found.load(Ordering::Relaxed) < c {
            return (c, SearchOutcome::Unknown); // superseded; never read
        }
        let (u, v) = g.endpoints(first);
        if start.count(u, c) >= caps[u] || start.count(v, c) >= caps[v] {
            return (c, SearchOutcome::None);
        }
        let mut coloring = start.clone();
        coloring.set_color(g, first, c);
        let mut state = State { g, k, caps: caps.to_vec(), coloring, free: rest, avoid, shared, local_nodes: 0 };
        if !(state.saturation_ok(u) && state.saturation_ok(v)) {
            return (c, SearchOutcome::None);
        }
        match state.feasible(0) {
            Dfs::Found => {
                best_found.fetch_min(c, Ordering::Relaxed);
                if c == 1 {
                    // no branch can beat color 1; everyone else may stop
                    shared.stop.store(true, Ordering::Relaxed);
                }
                (c, SearchOutcome::Found(state.coloring))
            }
            Dfs::Exhausted => (c, SearchOutcome::None),
            Dfs::Budget | Dfs::Stopped => (c, SearchOutcome::Unknown),
        }
    });
    let mut saw_budget = false;
    for (_, out) in branches {
        match out {
            SearchOutcome::Found(w) => return SearchOutcome::Found(w),
            SearchOutcome::Unknown => saw_budget = true,
            SearchOutcome::None => {}
        }
    }
    if saw_budget {
        SearchOutcome::Unknown
    } else {
        SearchOutcome::None
    }
}
