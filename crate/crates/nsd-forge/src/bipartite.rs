//! NSD 3-colorings of nice bipartite graphs with sums separated mod 3, and
//! the quasi-majority 6-coloring obtained by splitting each color class.

use crate::coloring::{verify, EdgeColoring, Mode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::qm::qm_two_coloring;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Residue targets for one component: every first-side vertex lands exactly
/// on `side_residue` mod 3, every second-side vertex anywhere else.
#[derive(Debug, Clone)]
pub struct ResiduePlan {
    pub side_residue: u64,
    pub first_side: Vec<usize>,
    pub second_side: Vec<usize>,
    pub root: usize,
}

/// NSD 3-coloring of a nice bipartite graph whose vertex sums satisfy
/// sigma(v1) != sigma(v2) (mod 3) across the two sides of every component.
///
/// Colors stand for their residues with 3 acting as 0. Each component is
/// colored by a leaf-to-root sweep of a spanning tree: all edges start at
/// color 3 and each non-root vertex retargets its parent edge to push its
/// own sum into its allowed residue set. Only the root's residue is forced,
/// so the sweep is retried over a small family of configurations, then over
/// seeded random spanning trees, and finally handed to an exact residue
/// search; every successful run is validated before returning.
pub fn z3_nsd_coloring(g: &Graph) -> Result<EdgeColoring> {
    if !g.is_nice() {
        return Err(Error::invalid("graph has a single-edge component"));
    }
    let Some((side_a, _)) = g.bipartition() else {
        return Err(Error::invalid("graph is not bipartite"));
    };
    let in_a: Vec<bool> = {
        let mut v = vec![false; g.n()];
        for &x in &side_a {
            v[x] = true;
        }
        v
    };
    let mut coloring = EdgeColoring::uncolored(g, 3);
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let plan = color_component(g, &comp, &in_a, &mut coloring)?;
        debug_assert!(component_residues_separated(g, &coloring, &plan));
    }
    let report = verify(g, &coloring, Mode::QuasiMajority, 3);
    if !report.nsd {
        return Err(Error::invariant("mod-3 coloring failed the NSD check"));
    }
    Ok(coloring)
}

/// Checks the separation property the construction promises.
pub fn component_residues_separated(g: &Graph, c: &EdgeColoring, plan: &ResiduePlan) -> bool {
    let first: std::collections::BTreeSet<u64> =
        plan.first_side.iter().map(|&v| c.sum(v) % 3).collect();
    let second: std::collections::BTreeSet<u64> =
        plan.second_side.iter().map(|&v| c.sum(v) % 3).collect();
    let _ = g;
    first.is_disjoint(&second) && first.iter().all(|&r| r == plan.side_residue)
}

fn color_component(
    g: &Graph,
    comp: &[usize],
    in_a: &[bool],
    coloring: &mut EdgeColoring,
) -> Result<ResiduePlan> {
    let comp_edges: Vec<usize> = comp
        .iter()
        .flat_map(|&v| g.adj(v).iter().filter(move |&&(u, _)| v < u).map(|&(_, e)| e))
        .collect();
    let roots: Vec<usize> = comp.iter().copied().take(3).collect();
    // deterministic sweeps first, then seeded random spanning trees
    for tree_seed in 0..=40u64 {
        for &swap in &[false, true] {
            for r1 in 0..3u64 {
                for &root in &roots {
                    for &designate in &[false, true] {
                        if let Some(plan) = try_sweep(
                            g, comp, in_a, coloring, &comp_edges, swap, r1, root, designate,
                            tree_seed,
                        ) {
                            return Ok(plan);
                        }
                    }
                }
            }
        }
    }
    // exact residue search over the component, still shape by shape
    for &swap in &[false, true] {
        for r1 in 0..3u64 {
            if let Some(plan) = exact_residues(g, comp, in_a, coloring, &comp_edges, swap, r1) {
                return Ok(plan);
            }
        }
    }
    Err(Error::invariant("no residue-separated 3-coloring found for a bipartite component"))
}

fn sides(comp: &[usize], in_a: &[bool], swap: bool) -> (Vec<usize>, Vec<usize>) {
    let first: Vec<usize> = comp.iter().copied().filter(|&v| in_a[v] != swap).collect();
    let second: Vec<usize> = comp.iter().copied().filter(|&v| in_a[v] == swap).collect();
    (first, second)
}

#[allow(clippy::too_many_arguments)]
fn try_sweep(
    g: &Graph,
    comp: &[usize],
    in_a: &[bool],
    coloring: &mut EdgeColoring,
    comp_edges: &[usize],
    swap: bool,
    r1: u64,
    root: usize,
    designate: bool,
    tree_seed: u64,
) -> Option<ResiduePlan> {
    let (first, second) = sides(comp, in_a, swap);
    if first.is_empty() || second.is_empty() {
        return None;
    }
    let designated = if designate {
        second.iter().copied().find(|&v| v != root)
    } else {
        None
    };

    // spanning tree by BFS; seed 0 keeps sorted neighbor order, other seeds
    // shuffle it reproducibly
    let mut parent: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut order = vec![root];
    let mut seen: std::collections::BTreeSet<usize> = [root].into();
    let mut rng = ChaCha8Rng::seed_from_u64(tree_seed.wrapping_mul(0x9e3779b97f4a7c15) ^ root as u64);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let mut nbrs: Vec<usize> = g.neighbors(v).collect();
        if tree_seed > 0 {
            for i in (1..nbrs.len()).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                nbrs.swap(i, j);
            }
        }
        for u in nbrs {
            if seen.insert(u) {
                parent.insert(u, v);
                order.push(u);
            }
        }
    }

    for &e in comp_edges {
        coloring.set_color(g, e, 3);
    }
    let allowed = |v: usize| -> Vec<u64> {
        if in_a[v] != swap {
            vec![r1]
        } else {
            (0..3).filter(|&r| r != r1).collect()
        }
    };
    for &v in order.iter().rev() {
        if v == root {
            continue;
        }
        let e = g.edge_index(v, parent[&v]).unwrap();
        let sigma = coloring.sum(v);
        let targets = allowed(v);
        let mut valid: Vec<usize> = (1..=3)
            .filter(|&p| targets.contains(&((sigma - 3 + p as u64) % 3)))
            .collect();
        if valid.is_empty() {
            return None;
        }
        if designated == Some(v) && valid.len() >= 2 {
            valid.rotate_left(1);
        }
        coloring.set_color(g, e, valid[0]);
    }
    let ok = allowed(root).contains(&(coloring.sum(root) % 3));
    ok.then(|| ResiduePlan { side_residue: r1, first_side: first, second_side: second, root })
}

/// Backtracking over the component's edges with per-vertex residue targets;
/// fires only when every sweep configuration failed.
fn exact_residues(
    g: &Graph,
    comp: &[usize],
    in_a: &[bool],
    coloring: &mut EdgeColoring,
    comp_edges: &[usize],
    swap: bool,
    r1: u64,
) -> Option<ResiduePlan> {
    let (first, second) = sides(comp, in_a, swap);
    if first.is_empty() || second.is_empty() {
        return None;
    }
    let allowed: std::collections::BTreeMap<usize, Vec<u64>> = comp
        .iter()
        .map(|&v| {
            let set = if in_a[v] != swap {
                vec![r1]
            } else {
                (0..3).filter(|&r| r != r1).collect()
            };
            (v, set)
        })
        .collect();
    for &e in comp_edges {
        coloring.set_color(g, e, 0);
    }
    let mut nodes = 0u64;
    if assign(g, coloring, comp_edges, 0, &allowed, &mut nodes) {
        return Some(ResiduePlan { side_residue: r1, first_side: first, second_side: second, root: comp[0] });
    }
    for &e in comp_edges {
        coloring.set_color(g, e, 3);
    }
    None
}

fn assign(
    g: &Graph,
    coloring: &mut EdgeColoring,
    edges: &[usize],
    pos: usize,
    allowed: &std::collections::BTreeMap<usize, Vec<u64>>,
    nodes: &mut u64,
) -> bool {
    let Some(&e) = edges.get(pos) else {
        return true;
    };
    let (u, v) = g.endpoints(e);
    for c in 1..=3usize {
        *nodes += 1;
        if *nodes > 50_000_000 {
            return false;
        }
        coloring.set_color(g, e, c);
        let sat_ok = |w: usize| {
            coloring.colored_degree(w) != g.degree(w)
                || allowed[&w].contains(&(coloring.sum(w) % 3))
        };
        if sat_ok(u) && sat_ok(v) && assign(g, coloring, edges, pos + 1, allowed, nodes) {
            return true;
        }
    }
    coloring.set_color(g, e, 0);
    false
}

/// Quasi-majority NSD coloring of a nice bipartite graph with at most 6
/// colors: each class of the mod-3 coloring is split in half, and the
/// second half moves up by 3, which keeps every sum's residue.
pub fn qmnsd_six(g: &Graph) -> Result<EdgeColoring> {
    let base = z3_nsd_coloring(g)?;
    let mut out = EdgeColoring::uncolored(g, 6);
    for e in 0..g.m() {
        out.set_color(g, e, base.color(e));
    }
    for class in 1..=3usize {
        let ids: Vec<usize> = (0..g.m()).filter(|&e| base.color(e) == class).collect();
        if ids.is_empty() {
            continue;
        }
        let sub = g.edge_subgraph(&ids);
        let split = qm_two_coloring(&sub).ok_or_else(|| {
            Error::invariant("a bipartite subgraph cannot have odd size with all-even degrees")
        })?;
        for (j, &orig) in ids.iter().enumerate() {
            if split.color(j) == 2 {
                out.set_color(g, orig, class + 3);
            }
        }
    }
    let report = verify(g, &out, Mode::QuasiMajority, 6);
    if !report.pass {
        return Err(Error::invariant("6-coloring failed verification"));
    }
    Ok(out)
}
