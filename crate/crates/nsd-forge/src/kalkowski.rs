//! General bounded-palette algorithms: the two window-based sweeps (12
//! colors quasi-majority, 18 colors majority) and the max-degree-driven
//! recursion with palette ceil((3*maxdeg+4)/2).
//!
//! The window sweeps process the vertices of each component in an order
//! where everyone but the last vertex has a later neighbor. Every processed
//! vertex v gets a two-element window W(v) = {w, w+offset} of admitted sums
//! with w in the low half modulo 2*offset; windows of adjacent processed
//! vertices are disjoint (equivalently, their w values differ), and each
//! vertex's sum stays inside its window for the rest of the run, because
//! back edges only ever toggle by exactly +-offset in the direction their
//! processed endpoint allows.

use crate::coloring::{verify, EdgeColoring, Mode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::qm::{majority_four_coloring, qm_three_coloring};

/// Per-vertex window bookkeeping of a sweep.
#[derive(Debug, Clone)]
pub struct WindowAssignment {
    pub offset: u64,
    /// anchor w(v) per vertex; `None` for the final vertex of each
    /// component and for untouched vertices
    pub anchor: Vec<Option<u64>>,
}

impl WindowAssignment {
    pub fn window(&self, v: usize) -> Option<(u64, u64)> {
        self.anchor[v].map(|w| (w, w + self.offset))
    }
}

/// Palette geometry of one sweep variant.
struct SweepParams {
    mode: Mode,
    /// toggle step and half the window period
    offset: u64,
    /// colors the base coloring occupies after shifting
    base_shift: usize,
    /// forward-recolor range (inclusive)
    fwd_lo: usize,
    fwd_hi: usize,
    /// final palette bound
    k: usize,
}

/// Quasi-majority NSD coloring with at most 12 colors for any nice graph.
pub fn kalkowski_qmnsd12(g: &Graph) -> Result<EdgeColoring> {
    kalkowski_qmnsd12_traced(g).map(|(c, _)| c)
}

pub fn kalkowski_qmnsd12_traced(g: &Graph) -> Result<(EdgeColoring, WindowAssignment)> {
    if !g.is_nice() {
        return Err(Error::invalid("graph has a single-edge component"));
    }
    let base = qm_three_coloring(g);
    let params =
        SweepParams { mode: Mode::QuasiMajority, offset: 4, base_shift: 4, fwd_lo: 5, fwd_hi: 8, k: 12 };
    sweep(g, &base, params)
}

/// Majority NSD coloring with at most 18 colors for graphs of minimum
/// degree 2. Graphs whose degrees are all even reuse the 12-color run,
/// whose caps then coincide with the majority ones.
pub fn kalkowski_mnsd18(g: &Graph) -> Result<EdgeColoring> {
    if g.n() > 0 && g.m() > 0 && g.min_degree() < 2 {
        return Err(Error::precondition("majority colorings need minimum degree 2"));
    }
    if (0..g.n()).all(|v| g.degree(v) % 2 == 0) {
        let c = kalkowski_qmnsd12(g)?;
        let report = verify(g, &c, Mode::Majority, 18);
        if !report.pass {
            return Err(Error::invariant("even-degree reuse failed the majority check"));
        }
        return Ok(c.with_palette(18));
    }
    let base = majority_four_coloring(g)?;
    let params =
        SweepParams { mode: Mode::Majority, offset: 6, base_shift: 6, fwd_lo: 7, fwd_hi: 12, k: 18 };
    sweep(g, &base, params).map(|(c, _)| c)
}

fn sweep(g: &Graph, base: &EdgeColoring, params: SweepParams) -> Result<(EdgeColoring, WindowAssignment)> {
    let mut coloring = EdgeColoring::uncolored(g, params.k);
    for e in 0..g.m() {
        coloring.set_color(g, e, base.color(e) + params.base_shift);
    }
    let caps: Vec<u32> = (0..g.n()).map(|v| params.mode.cap(g.degree(v)) as u32).collect();
    let mut anchor: Vec<Option<u64>> = vec![None; g.n()];

    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let order = sweep_order(g, &comp);
        run_component(g, &order, &mut coloring, &caps, &params, &mut anchor)?;
    }

    let report = verify(g, &coloring, params.mode, params.k);
    if !report.pass {
        return Err(Error::invariant(format!(
            "window sweep failed verification in {} mode",
            params.mode.name()
        )));
    }
    Ok((coloring, WindowAssignment { offset: params.offset, anchor }))
}

/// Reverse BFS from a maximum-degree vertex: the BFS root comes last, and
/// every other vertex has its BFS parent (a later position) as a neighbor.
fn sweep_order(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let max_deg = comp.iter().map(|&v| g.degree(v)).max().unwrap();
    let last = *comp.iter().find(|&&v| g.degree(v) == max_deg).unwrap();
    let mut bfs = vec![last];
    let mut seen: std::collections::BTreeSet<usize> = [last].into();
    let mut head = 0;
    while head < bfs.len() {
        let v = bfs[head];
        head += 1;
        for u in g.neighbors(v) {
            if seen.insert(u) {
                bfs.push(u);
            }
        }
    }
    bfs.reverse();
    bfs
}

struct Move {
    edge: usize,
    old: usize,
    new: usize,
}

fn apply(g: &Graph, coloring: &mut EdgeColoring, moves: &[Move]) {
    for m in moves {
        coloring.set_color(g, m.edge, m.new);
    }
}

fn rollback(g: &Graph, coloring: &mut EdgeColoring, moves: &[Move]) {
    for m in moves.iter().rev() {
        coloring.set_color(g, m.edge, m.old);
    }
}

fn caps_ok(coloring: &EdgeColoring, caps: &[u32], touched: &[usize]) -> bool {
    touched.iter().all(|&v| (1..=coloring.k()).all(|c| coloring.count(v, c) <= caps[v]))
}

fn low_half(s: u64, offset: u64) -> bool {
    s % (2 * offset) < offset
}

fn run_component(
    g: &Graph,
    order: &[usize],
    coloring: &mut EdgeColoring,
    caps: &[u32],
    params: &SweepParams,
    anchor: &mut [Option<u64>],
) -> Result<()> {
    let n = order.len();
    let pos: std::collections::BTreeMap<usize, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let offset = params.offset;

    // first vertex: pin its window around the base sum
    let v1 = order[0];
    let s1 = coloring.sum(v1);
    anchor[v1] = Some(if low_half(s1, offset) { s1 } else { s1 - offset });

    for k_idx in 1..n - 1 {
        let vk = order[k_idx];
        process_vertex(g, vk, &pos, k_idx, coloring, caps, params, anchor)?;
    }
    finish_last(g, order, &pos, coloring, caps, params, anchor)
}

/// One toggleable back edge: its forced direction keeps the processed
/// endpoint inside its window.
struct Back {
    edge: usize,
    other: usize,
    dir: i64,
}

fn back_edges(
    g: &Graph,
    vk: usize,
    pos: &std::collections::BTreeMap<usize, usize>,
    k_idx: usize,
    coloring: &EdgeColoring,
    params: &SweepParams,
    anchor: &[Option<u64>],
) -> Result<Vec<Back>> {
    let mut backs = Vec::new();
    for &(u, e) in g.adj(vk) {
        if pos[&u] >= k_idx {
            continue;
        }
        let c = coloring.color(e);
        if c < params.fwd_lo || c > params.fwd_hi {
            return Err(Error::invariant(format!(
                "back edge color {c} escaped the toggle band [{},{}]",
                params.fwd_lo, params.fwd_hi
            )));
        }
        let w = anchor[u].ok_or_else(|| Error::invariant("processed vertex lacks a window"))?;
        let su = coloring.sum(u);
        let dir = if su == w {
            1
        } else if su == w + params.offset {
            -1
        } else {
            return Err(Error::invariant("processed vertex drifted out of its window"));
        };
        backs.push(Back { edge: e, other: u, dir });
    }
    backs.sort_by_key(|b| pos[&b.other]);
    Ok(backs)
}

#[allow(clippy::too_many_arguments)]
fn process_vertex(
    g: &Graph,
    vk: usize,
    pos: &std::collections::BTreeMap<usize, usize>,
    k_idx: usize,
    coloring: &mut EdgeColoring,
    caps: &[u32],
    params: &SweepParams,
    anchor: &mut [Option<u64>],
) -> Result<()> {
    let offset = params.offset;
    let backs = back_edges(g, vk, pos, k_idx, coloring, params, anchor)?;
    let forward = g
        .adj(vk)
        .iter()
        .filter(|&&(u, _)| pos[&u] > k_idx)
        .min_by_key(|&&(u, _)| pos[&u])
        .copied()
        .ok_or_else(|| Error::invariant("ordering guarantees a later neighbor"))?;
    let (fwd_nbr, fwd_edge) = forward;
    let fwd_old = coloring.color(fwd_edge);

    let taken: std::collections::BTreeSet<u64> = g
        .adj(vk)
        .iter()
        .filter(|&&(u, _)| pos[&u] < k_idx)
        .filter_map(|&(u, _)| anchor[u])
        .collect();

    let pos_edges: Vec<&Back> = backs.iter().filter(|b| b.dir > 0).collect();
    let neg_edges: Vec<&Back> = backs.iter().filter(|b| b.dir < 0).collect();

    let mut fwd_options: Vec<usize> = vec![fwd_old];
    fwd_options.extend((params.fwd_lo..=params.fwd_hi).filter(|&c| c != fwd_old));

    // candidate order: untouched forward edge first, then minimal toggling
    for &fc in &fwd_options {
        let mut combos: Vec<(usize, usize)> = Vec::new();
        for a in 0..=pos_edges.len() {
            for b in 0..=neg_edges.len() {
                combos.push((a, b));
            }
        }
        combos.sort_by_key(|&(a, b)| (a + b, a));
        for (a, b) in combos {
            let mut moves = Vec::new();
            if fc != fwd_old {
                moves.push(Move { edge: fwd_edge, old: fwd_old, new: fc });
            }
            for e in pos_edges.iter().take(a) {
                let old = coloring.color(e.edge);
                moves.push(Move { edge: e.edge, old, new: (old as i64 + offset as i64) as usize });
            }
            for e in neg_edges.iter().take(b) {
                let old = coloring.color(e.edge);
                moves.push(Move { edge: e.edge, old, new: (old as i64 - offset as i64) as usize });
            }
            apply(g, coloring, &moves);
            let mut touched = vec![vk, fwd_nbr];
            touched.extend(pos_edges.iter().take(a).map(|e| e.other));
            touched.extend(neg_edges.iter().take(b).map(|e| e.other));
            let s = coloring.sum(vk);
            let w_cand = if low_half(s, offset) { s } else { s - offset };
            if caps_ok(coloring, caps, &touched) && !taken.contains(&w_cand) {
                anchor[vk] = Some(w_cand);
                return Ok(());
            }
            rollback(g, coloring, &moves);
        }
    }

    // exhaustive fallback over toggle subsets (never reached in practice)
    if backs.len() <= 20 {
        for &fc in &fwd_options {
            for mask in 0u32..(1 << backs.len()) {
                let mut moves = Vec::new();
                if fc != fwd_old {
                    moves.push(Move { edge: fwd_edge, old: fwd_old, new: fc });
                }
                for (i, back) in backs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        let old = coloring.color(back.edge);
                        moves.push(Move {
                            edge: back.edge,
                            old,
                            new: (old as i64 + back.dir * offset as i64) as usize,
                        });
                    }
                }
                apply(g, coloring, &moves);
                let mut touched = vec![vk, fwd_nbr];
                touched.extend(backs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, b)| b.other));
                let s = coloring.sum(vk);
                let w_cand = if low_half(s, offset) { s } else { s - offset };
                if caps_ok(coloring, caps, &touched) && !taken.contains(&w_cand) {
                    anchor[vk] = Some(w_cand);
                    return Ok(());
                }
                rollback(g, coloring, &moves);
            }
        }
    }
    Err(Error::invariant(format!("no admissible window found for vertex {vk}")))
}

fn finish_last(
    g: &Graph,
    order: &[usize],
    pos: &std::collections::BTreeMap<usize, usize>,
    coloring: &mut EdgeColoring,
    caps: &[u32],
    params: &SweepParams,
    anchor: &mut [Option<u64>],
) -> Result<()> {
    let offset = params.offset;
    let vn = *order.last().unwrap();
    let backs = back_edges(g, vn, pos, order.len() - 1, coloring, params, anchor)?;

    // push every raised neighbor down to its anchor
    let mut down_moves = Vec::new();
    for b in &backs {
        if b.dir < 0 {
            let old = coloring.color(b.edge);
            down_moves.push(Move { edge: b.edge, old, new: old - offset as usize });
        }
    }
    apply(g, coloring, &down_moves);

    let neighbor_sums = |coloring: &EdgeColoring| -> Vec<u64> {
        backs.iter().map(|b| coloring.sum(b.other)).collect()
    };
    let s = coloring.sum(vn);

    // canonical three-branch choice, then a subset fallback
    let mut raise: Vec<usize> = Vec::new(); // indices into backs to lift by +offset
    if !low_half(s, offset) {
        // keep s
    } else if let Some(i) = backs
        .iter()
        .enumerate()
        .find(|(_, b)| anchor[b.other] != Some(s))
        .map(|(i, _)| i)
    {
        raise.push(i);
    } else {
        raise.extend([0, 1]);
    }

    let try_raise = |coloring: &mut EdgeColoring, raise: &[usize]| -> Vec<Move> {
        let moves: Vec<Move> = raise
            .iter()
            .map(|&i| {
                let old = coloring.color(backs[i].edge);
                Move { edge: backs[i].edge, old, new: old + offset as usize }
            })
            .collect();
        apply(g, coloring, &moves);
        moves
    };

    let ok_now = |coloring: &EdgeColoring| -> bool {
        let sn = coloring.sum(vn);
        let mut touched: Vec<usize> = vec![vn];
        touched.extend(backs.iter().map(|b| b.other));
        caps_ok(coloring, caps, &touched) && neighbor_sums(coloring).iter().all(|&x| x != sn)
    };

    if raise.len() <= backs.len() {
        let moves = try_raise(coloring, &raise);
        if ok_now(coloring) {
            return Ok(());
        }
        rollback(g, coloring, &moves);
    }

    // fallback: every raise subset, smallest first
    if backs.len() <= 20 {
        let mut masks: Vec<u32> = (0u32..(1 << backs.len())).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let subset: Vec<usize> =
                (0..backs.len()).filter(|i| mask & (1 << i) != 0).collect();
            let moves = try_raise(coloring, &subset);
            if ok_now(coloring) {
                return Ok(());
            }
            rollback(g, coloring, &moves);
        }
    }
    Err(Error::invariant(format!("no admissible final sum at vertex {vn}")))
}

// ---------------------------------------------------------------------------
// palette bound driven by the maximum degree
// ---------------------------------------------------------------------------

/// Quasi-majority NSD coloring with at most ceil((3*maxdeg+4)/2) colors.
/// Beats the 12-color sweep when the maximum degree is at most 6.
pub fn qmnsd_delta_bound(g: &Graph) -> Result<EdgeColoring> {
    if !g.is_nice() {
        return Err(Error::invalid("graph has a single-edge component"));
    }
    let delta = g.max_degree();
    let k = (3 * delta + 4).div_ceil(2).max(2);
    let mut colors = vec![0usize; g.m()];
    let all: Vec<usize> = (0..g.m()).collect();
    solve_delta(g, &all, k, &mut colors)?;
    let coloring = EdgeColoring::from_colors(g, k, &colors)?;
    let report = verify(g, &coloring, Mode::QuasiMajority, k);
    if !report.pass {
        return Err(Error::invariant("degree-bound recursion failed verification"));
    }
    Ok(coloring)
}

struct DeltaLevel<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
}

impl<'a> DeltaLevel<'a> {
    fn new(g: &'a Graph, edges: &[usize]) -> Self {
        let mut alive = vec![false; g.m()];
        let mut deg = vec![0usize; g.n()];
        for &e in edges {
            alive[e] = true;
            let (u, v) = g.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        DeltaLevel { g, alive, deg }
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.g.adj(v).iter().copied().filter(move |&(_, e)| self.alive[e])
    }

    fn sigma(&self, colors: &[usize], v: usize) -> u64 {
        self.neighbors(v).map(|(_, e)| colors[e] as u64).sum()
    }
}

fn solve_delta(g: &Graph, edges: &[usize], k: usize, colors: &mut [usize]) -> Result<()> {
    let level = DeltaLevel::new(g, edges);
    // components over the alive edges
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if seen[s] || level.deg[s] == 0 {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for (u, _) in level.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        let comp_edges: Vec<usize> = comp
            .iter()
            .flat_map(|&v| level.neighbors(v).filter(move |&(u, _)| v < u).map(|(_, e)| e))
            .collect();
        solve_delta_component(g, &level, &comp, &comp_edges, k, colors)?;
    }
    Ok(())
}

fn solve_delta_component(
    g: &Graph,
    level: &DeltaLevel,
    comp: &[usize],
    comp_edges: &[usize],
    k: usize,
    colors: &mut [usize],
) -> Result<()> {
    if comp_edges.len() == 1 {
        colors[comp_edges[0]] = 1;
        return Ok(());
    }
    // a vertex with two nonadjacent neighbors, or the component is a clique
    let mut pick: Option<(usize, usize, usize)> = None;
    'scan: for &y in comp {
        if level.deg[y] < 2 {
            continue;
        }
        let nbrs: Vec<usize> = level.neighbors(y).map(|(u, _)| u).collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                let adjacent = g
                    .edge_index(nbrs[i], nbrs[j])
                    .map(|e| level.alive[e])
                    .unwrap_or(false);
                if !adjacent {
                    pick = Some((y, nbrs[i], nbrs[j]));
                    break 'scan;
                }
            }
        }
    }
    let Some((y, x, z)) = pick else {
        // every pair of neighbors is adjacent everywhere: a clique
        let (sub, edge_map) = extract_component(g, level, comp, comp_edges);
        let (_, c) = crate::families::color_complete(sub.n())?;
        for (local, &orig) in edge_map.iter().enumerate() {
            colors[orig] = c.color(local);
        }
        return Ok(());
    };

    let exy = g.edge_index(x, y).unwrap();
    let eyz = g.edge_index(y, z).unwrap();
    let rest: Vec<usize> = comp_edges.iter().copied().filter(|&e| e != exy && e != eyz).collect();
    solve_delta(g, &rest, k, colors)?;

    let sub = DeltaLevel::new(g, &rest);
    let s_x = sub.sigma(colors, x);
    let s_y = sub.sigma(colors, y);
    let s_z = sub.sigma(colors, z);

    let free_list = |end: usize, s_end: u64, cross: i64| -> Vec<usize> {
        let cap = level.deg[end].div_ceil(2);
        let mut counts = vec![0usize; k + 1];
        for (_, e) in sub.neighbors(end) {
            counts[colors[e]] += 1;
        }
        (1..=k)
            .filter(|&c| counts[c] < cap)
            .filter(|&c| {
                sub.neighbors(end).all(|(u, _)| sub.sigma(colors, u) != s_end + c as u64)
            })
            .filter(|&c| c as i64 != cross)
            .collect()
    };
    // the color that would tie the sums at y and z through the other edge,
    // and symmetrically at y and x
    let a_list = free_list(x, s_x, s_z as i64 - s_y as i64);
    let b_list = free_list(z, s_z, s_x as i64 - s_y as i64);
    if a_list.is_empty() || b_list.is_empty() {
        return Err(Error::invariant("free lists for the removed edges came back empty"));
    }
    let a = *a_list.first().unwrap();
    let b = *b_list.last().unwrap();
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for &b2 in b_list.iter().filter(|&&c| c != a) {
        candidates.push((a, b2));
    }
    for &a2 in a_list.iter().filter(|&&c| c != a && c != b) {
        candidates.push((a2, b));
    }
    let forbidden_y: std::collections::BTreeSet<u64> =
        sub.neighbors(y).map(|(u, _)| sub.sigma(colors, u)).collect();
    let y_cap = level.deg[y].div_ceil(2);
    let mut y_counts = vec![0usize; k + 1];
    for (_, e) in sub.neighbors(y) {
        y_counts[colors[e]] += 1;
    }
    for (ca, cb) in candidates {
        if ca == cb {
            continue;
        }
        if forbidden_y.contains(&(s_y + ca as u64 + cb as u64)) {
            continue;
        }
        if y_counts[ca] + 1 > y_cap || y_counts[cb] + 1 > y_cap {
            continue;
        }
        colors[exy] = ca;
        colors[eyz] = cb;
        return Ok(());
    }
    Err(Error::invariant("no admissible pair for the two removed edges"))
}

fn extract_component(
    g: &Graph,
    level: &DeltaLevel,
    comp: &[usize],
    comp_edges: &[usize],
) -> (Graph, Vec<usize>) {
    let _ = level;
    let index_of = |v: usize| comp.binary_search(&v).unwrap();
    let mut pairs: Vec<((usize, usize), usize)> = comp_edges
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            let (a, b) = (index_of(u), index_of(v));
            ((a.min(b), a.max(b)), e)
        })
        .collect();
    pairs.sort_unstable();
    let edges: Vec<(usize, usize)> = pairs.iter().map(|&(p, _)| p).collect();
    let edge_map: Vec<usize> = pairs.iter().map(|&(_, e)| e).collect();
    (Graph::build(comp.len(), &edges).expect("component extraction is valid"), edge_map)
}
