//! Base quasi-majority and majority colorings with small palettes, built on
//! Euler-circuit alternation.
//!
//! Per component, a virtual vertex is attached to all odd-degree vertices,
//! an Euler circuit of the augmented multigraph is colored alternately, and
//! the virtual hops are dropped. Every vertex then sees each class on at
//! most ceil(d/2) of its edges. The single exception is the circuit start of
//! a component whose size is odd and whose degrees are all even: that vertex
//! gets d/2+1 edges of one class, and the callers below either avoid, absorb,
//! or recolor around it.

use crate::coloring::{is_majority, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Closed walks covering every edge exactly once, one per component with
/// edges. Virtual hops (between the augmentation vertex and odd-degree
/// vertices) carry no edge index and use `usize::MAX` as the virtual end.
#[derive(Debug, Clone)]
pub struct EulerTour {
    pub tours: Vec<ComponentTour>,
}

#[derive(Debug, Clone)]
pub struct ComponentTour {
    pub start: usize,
    pub steps: Vec<TourStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TourStep {
    pub from: usize,
    pub to: usize,
    /// edge index in the host graph; `None` for a virtual hop
    pub edge: Option<usize>,
}

pub const VIRTUAL: usize = usize::MAX;

/// Euler tours of all components, starting each circuit at the smallest
/// positive-degree vertex (or at the virtual vertex when odd degrees exist).
pub fn euler_tours(g: &Graph) -> EulerTour {
    let edges: Vec<(usize, usize, usize)> =
        g.edges().iter().enumerate().map(|(e, &(u, v))| (e, u, v)).collect();
    let comps = split_components(g.n(), &edges, &|verts: &[usize], _deg: &dyn Fn(usize) -> usize| {
        verts[0]
    });
    EulerTour { tours: comps.into_iter().map(|c| c.tour).collect() }
}

struct CompSplit {
    /// edge ids in walk order; `None` for virtual hops
    circuit: Vec<Option<usize>>,
    /// start vertex of an all-even odd-size component (receives the +1)
    exceptional: Option<usize>,
    tour: ComponentTour,
}

/// Runs the augmented Euler alternation on each edge-connected component.
/// `pick_start` chooses the circuit start for all-even odd-size components;
/// it receives the component's sorted vertices and its in-component degree.
fn split_components(
    n: usize,
    edges: &[(usize, usize, usize)],
    pick_start: &dyn Fn(&[usize], &dyn Fn(usize) -> usize) -> usize,
) -> Vec<CompSplit> {
    // component discovery over the given edge set
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(e, u, v) in edges {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX || adj[s].is_empty() {
            continue;
        }
        let id = comps.len();
        let mut verts = vec![s];
        comp_of[s] = id;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if comp_of[u] == usize::MAX {
                    comp_of[u] = id;
                    verts.push(u);
                    stack.push(u);
                }
            }
        }
        verts.sort_unstable();
        comps.push(verts);
    }

    let mut edges_by_comp: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); comps.len()];
    for &(e, u, v) in edges {
        edges_by_comp[comp_of[u]].push((e, u, v));
    }

    comps
        .into_iter()
        .zip(edges_by_comp)
        .map(|(verts, comp_edges)| {
            let mut deg = std::collections::BTreeMap::new();
            for &(_, u, v) in &comp_edges {
                *deg.entry(u).or_insert(0usize) += 1;
                *deg.entry(v).or_insert(0usize) += 1;
            }
            let odd: Vec<usize> = verts.iter().copied().filter(|v| deg[v] % 2 == 1).collect();
            let all_even = odd.is_empty();
            let odd_size = comp_edges.len() % 2 == 1;
            let deg_fn = |v: usize| deg.get(&v).copied().unwrap_or(0);
            let (start, exceptional) = if !all_even {
                (VIRTUAL, None)
            } else if odd_size {
                let s = pick_start(&verts, &deg_fn);
                (s, Some(s))
            } else {
                (verts[0], None)
            };
            let circuit = hierholzer(&verts, &comp_edges, &odd, start);
            let steps = circuit_steps(&comp_edges, &odd, &circuit, start);
            CompSplit {
                circuit: circuit.iter().map(|&s| s.1).collect(),
                exceptional,
                tour: ComponentTour { start: if start == VIRTUAL { VIRTUAL } else { start }, steps },
            }
        })
        .collect()
}

/// Returns `(to_vertex, edge)` slots in walk order, edge `None` for hops
/// through the virtual vertex.
fn hierholzer(
    verts: &[usize],
    comp_edges: &[(usize, usize, usize)],
    odd: &[usize],
    start: usize,
) -> Vec<(usize, Option<usize>)> {
    // slots: real edges first, then one virtual edge per odd vertex
    let mut slot_adj: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    let mut slots: Vec<(usize, usize, Option<usize>)> = Vec::new(); // (a, b, edge)
    for &(e, u, v) in comp_edges {
        slots.push((u, v, Some(e)));
    }
    for &v in odd {
        slots.push((VIRTUAL, v, None));
    }
    for (i, &(a, b, _)) in slots.iter().enumerate() {
        slot_adj.entry(a).or_default().push(i);
        slot_adj.entry(b).or_default().push(i);
    }
    let _ = verts;
    let mut used = vec![false; slots.len()];
    let mut ptr: std::collections::BTreeMap<usize, usize> =
        slot_adj.keys().map(|&v| (v, 0usize)).collect();
    let mut stack: Vec<(usize, Option<(usize, Option<usize>)>)> = vec![(start, None)];
    let mut out: Vec<(usize, Option<usize>)> = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let list = slot_adj.get(&v).map(|l| l.as_slice()).unwrap_or(&[]);
        let p = ptr.get_mut(&v).expect("every walked vertex has a slot list");
        while *p < list.len() && used[list[*p]] {
            *p += 1;
        }
        if *p == list.len() {
            let (_, via) = stack.pop().unwrap();
            if let Some(step) = via {
                out.push(step);
            }
        } else {
            let s = list[*p];
            used[s] = true;
            let (a, b, e) = slots[s];
            let next = if a == v { b } else { a };
            stack.push((next, Some((next, e))));
        }
    }
    out.reverse();
    debug_assert_eq!(out.iter().filter(|s| s.1.is_some()).count(), comp_edges.len());
    out
}

fn circuit_steps(
    comp_edges: &[(usize, usize, usize)],
    _odd: &[usize],
    circuit: &[(usize, Option<usize>)],
    start: usize,
) -> Vec<TourStep> {
    let mut from = start;
    let mut steps = Vec::with_capacity(circuit.len());
    for &(to, e) in circuit {
        steps.push(TourStep { from, to, edge: e });
        from = to;
    }
    let _ = comp_edges;
    steps
}

/// Class (0/1) per edge from alternating along each circuit. The class-0
/// overflow vertex of each exceptional component is reported alongside.
fn alternating_classes(
    n: usize,
    edges: &[(usize, usize, usize)],
    pick_start: &dyn Fn(&[usize], &dyn Fn(usize) -> usize) -> usize,
) -> (Vec<(usize, u8)>, Vec<Exceptional>) {
    let comps = split_components(n, edges, pick_start);
    let mut classes = Vec::new();
    let mut exceptionals = Vec::new();
    for comp in comps {
        let mut last_real: Option<usize> = None;
        for (pos, e) in comp.circuit.iter().enumerate() {
            if let Some(edge) = *e {
                classes.push((edge, (pos % 2) as u8));
                last_real = Some(edge);
            }
        }
        if let Some(v) = comp.exceptional {
            let _ = v;
            exceptionals.push(Exceptional {
                last_circuit_edge: last_real.expect("exceptional components have edges"),
            });
        }
    }
    (classes, exceptionals)
}

struct Exceptional {
    /// final edge of the circuit; class 0 and incident to the start vertex
    last_circuit_edge: usize,
}

fn smallest_start(verts: &[usize], _deg: &dyn Fn(usize) -> usize) -> usize {
    verts[0]
}

fn all_edges(g: &Graph) -> Vec<(usize, usize, usize)> {
    g.edges().iter().enumerate().map(|(e, &(u, v))| (e, u, v)).collect()
}

/// 2-coloring with at most ceil(d/2) edges of each color at every vertex.
/// Absent exactly when some component has odd size and all-even degrees.
pub fn qm_two_coloring(g: &Graph) -> Option<EdgeColoring> {
    let (classes, exceptionals) = alternating_classes(g.n(), &all_edges(g), &smallest_start);
    if !exceptionals.is_empty() {
        return None;
    }
    let mut c = EdgeColoring::uncolored(g, 2);
    for (e, class) in classes {
        c.set_color(g, e, 1 + class as usize);
    }
    Some(c)
}

/// Quasi-majority coloring with at most 3 colors, on every graph. In each
/// component where two colors cannot work, one overflow edge at the circuit
/// start is recolored with color 3.
pub fn qm_three_coloring(g: &Graph) -> EdgeColoring {
    let (classes, exceptionals) = alternating_classes(g.n(), &all_edges(g), &smallest_start);
    let mut c = EdgeColoring::uncolored(g, 3);
    for (e, class) in classes {
        c.set_color(g, e, 1 + class as usize);
    }
    for ex in exceptionals {
        c.set_color(g, ex.last_circuit_edge, 3);
    }
    c
}

/// 2-coloring with exactly d/2 edges of each color at every vertex; present
/// iff every component has all-even degrees and even size.
pub fn majority_two_coloring(g: &Graph) -> Option<EdgeColoring> {
    if (0..g.n()).any(|v| g.degree(v) % 2 == 1) {
        return None;
    }
    qm_two_coloring(g)
}

/// Majority coloring with at most 4 colors for graphs of minimum degree 2.
///
/// Odd cycle components are colored directly. Everything else is split by
/// Euler alternation into classes A and B, and each class is split again
/// into two colors. Circuit starts are chosen so every overflow lands on a
/// vertex with slack; the one shape with no slack (an odd cycle, inside a
/// class, through vertices of degree 3) is recolored by borrowing one color
/// from the other class.
pub fn majority_four_coloring(g: &Graph) -> Result<EdgeColoring> {
    if g.n() > 0 && g.min_degree() < 2 {
        return Err(Error::precondition("majority 4-coloring needs minimum degree 2"));
    }
    let mut coloring = EdgeColoring::uncolored(g, 4);
    let mut split_input: Vec<(usize, usize, usize)> = Vec::new();
    for comp in g.components() {
        if comp.len() >= 3
            && comp.len() % 2 == 1
            && comp.iter().all(|&v| g.degree(v) == 2)
        {
            color_odd_cycle(g, &comp, &mut coloring, 1, 2, 3);
        } else {
            for &v in &comp {
                for &(u, e) in g.adj(v) {
                    if v < u {
                        split_input.push((e, v, u));
                    }
                }
            }
        }
    }

    // split 1: the overflow vertex (if any) is a maximum-degree vertex of
    // its component, which here has degree >= 4
    let max_degree_start = |verts: &[usize], deg: &dyn Fn(usize) -> usize| {
        *verts.iter().max_by_key(|&&v| (deg(v), std::cmp::Reverse(v))).unwrap()
    };
    let (classes, _) = alternating_classes(g.n(), &split_input, &max_degree_start);
    let mut class_a = Vec::new();
    let mut class_b = Vec::new();
    for (e, class) in classes {
        let (u, v) = g.endpoints(e);
        if class == 0 {
            class_a.push((e, u, v));
        } else {
            class_b.push((e, u, v));
        }
    }

    let bad_a = second_split(g, &class_a, 1, 2, &mut coloring);
    let bad_b = second_split(g, &class_b, 3, 4, &mut coloring);
    for cycle in bad_a {
        repair_stranded_cycle(g, &cycle, &mut coloring, 3, 4, 1, 2)?;
    }
    for cycle in bad_b {
        repair_stranded_cycle(g, &cycle, &mut coloring, 1, 2, 3, 4)?;
    }

    if !is_majority(g, &coloring) {
        return Err(Error::invariant("majority 4-coloring construction failed its own check"));
    }
    Ok(coloring)
}

/// Alternates `lo`/`hi` around a class; returns the circuits of components
/// that cannot absorb their overflow (odd cycles of degree-3 vertices).
fn second_split(
    g: &Graph,
    class_edges: &[(usize, usize, usize)],
    lo: usize,
    hi: usize,
    coloring: &mut EdgeColoring,
) -> Vec<Vec<usize>> {
    // slack of starting the circuit at w: floor(d_G(w)/2) - (d_sub(w)/2 + 1)
    let absorbing_start = |verts: &[usize], deg: &dyn Fn(usize) -> usize| {
        *verts
            .iter()
            .max_by_key(|&&v| ((g.degree(v) / 2) as i64 - (deg(v) / 2 + 1) as i64, std::cmp::Reverse(v)))
            .unwrap()
    };
    let comps = split_components(g.n(), class_edges, &absorbing_start);
    let mut deg_sub = vec![0usize; g.n()];
    for &(_, u, v) in class_edges {
        deg_sub[u] += 1;
        deg_sub[v] += 1;
    }
    let mut bad = Vec::new();
    for comp in comps {
        if let Some(w) = comp.exceptional {
            if deg_sub[w] / 2 + 1 > g.degree(w) / 2 {
                // no vertex of this component has slack
                bad.push(comp.circuit.iter().map(|e| e.expect("all-even components have no hops")).collect());
                continue;
            }
        }
        for (pos, e) in comp.circuit.iter().enumerate() {
            if let Some(edge) = *e {
                coloring.set_color(g, edge, if pos % 2 == 0 { lo } else { hi });
            }
        }
    }
    bad
}

/// Colors an odd cycle properly with `a`, `b` and a single `c` edge.
fn color_odd_cycle(g: &Graph, comp: &[usize], coloring: &mut EdgeColoring, a: usize, b: usize, c: usize) {
    let start = comp[0];
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).find(|&u| u != prev).unwrap();
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    let len = order.len();
    for i in 0..len {
        let e = g.edge_index(order[i], order[(i + 1) % len]).unwrap();
        let col = if i + 1 == len { c } else if i % 2 == 0 { a } else { b };
        coloring.set_color(g, e, col);
    }
}

/// A stranded cycle alternates inside its own class except for one edge,
/// which borrows from the other class. The borrowed color is chosen at an
/// edge whose endpoints carry the same other-class color, which exists on
/// every odd cycle.
fn repair_stranded_cycle(
    g: &Graph,
    cycle_edges: &[usize],
    coloring: &mut EdgeColoring,
    other_lo: usize,
    other_hi: usize,
    own_lo: usize,
    own_hi: usize,
) -> Result<()> {
    let in_cycle: std::collections::BTreeSet<usize> = cycle_edges.iter().copied().collect();
    let other_color = |v: usize| -> Result<usize> {
        for &(_, e) in g.adj(v) {
            if !in_cycle.contains(&e) {
                let c = coloring.color(e);
                if c == other_lo || c == other_hi {
                    return Ok(c);
                }
            }
        }
        Err(Error::invariant("stranded cycle vertex lacks its other-class edge"))
    };
    let len = cycle_edges.len();
    let mut pivot = None;
    for (i, &e) in cycle_edges.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        if other_color(u)? == other_color(v)? {
            pivot = Some(i);
            break;
        }
    }
    let pivot = pivot.ok_or_else(|| {
        Error::invariant("odd stranded cycle must repeat an other-class color across some edge")
    })?;
    let (u, _) = g.endpoints(cycle_edges[pivot]);
    let borrowed = other_lo + other_hi - other_color(u)?;
    coloring.set_color(g, cycle_edges[pivot], borrowed);
    for step in 1..len {
        let e = cycle_edges[(pivot + step) % len];
        coloring.set_color(g, e, if step % 2 == 1 { own_lo } else { own_hi });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_quasi_majority, Mode};
    use crate::graph::{generate, random_gnp, FamilySpec};

    #[test]
    fn tour_covers_every_edge_once() {
        for spec in [
            FamilySpec::Complete { n: 5 },
            FamilySpec::Cycle { n: 6 },
            FamilySpec::Path { n: 7 },
            FamilySpec::RandomGnp { n: 10, p_num: 2, p_den: 5, seed: 3 },
        ] {
            let g = generate(&spec).unwrap();
            let tours = euler_tours(&g);
            let mut seen = vec![0usize; g.m()];
            for tour in &tours.tours {
                let mut prev_to: Option<usize> = None;
                for step in &tour.steps {
                    if let Some(e) = step.edge {
                        seen[e] += 1;
                    }
                    if let Some(p) = prev_to {
                        assert_eq!(p, step.from, "consecutive steps share a vertex");
                    }
                    prev_to = Some(step.to);
                }
            }
            assert!(seen.iter().all(|&s| s == 1), "{spec:?}");
        }
    }

    #[test]
    fn qm_two_presence() {
        // bipartite with max degree >= 2: always present
        for spec in [
            FamilySpec::Cycle { n: 4 },
            FamilySpec::CompleteBipartite { n: 3, m: 4 },
            FamilySpec::Path { n: 6 },
        ] {
            let g = generate(&spec).unwrap();
            let c = qm_two_coloring(&g).expect("bipartite graphs split into two classes");
            assert!(is_quasi_majority(&g, &c), "{spec:?}");
        }
        // odd size with all-even degrees: absent
        let c3 = generate(&FamilySpec::Cycle { n: 3 }).unwrap();
        assert!(qm_two_coloring(&c3).is_none());
        let c4 = generate(&FamilySpec::Cycle { n: 4 }).unwrap();
        let c = qm_two_coloring(&c4).unwrap();
        for v in 0..4 {
            assert_eq!(c.count(v, 1), 1);
            assert_eq!(c.count(v, 2), 1);
        }
    }

    #[test]
    fn qm_three_on_triangle_uses_all_colors() {
        let g = generate(&FamilySpec::Cycle { n: 3 }).unwrap();
        let c = qm_three_coloring(&g);
        let mut colors: Vec<usize> = (0..3).map(|e| c.color(e)).collect();
        colors.sort_unstable();
        assert_eq!(colors, vec![1, 2, 3]);
        assert!(is_quasi_majority(&g, &c));
    }

    #[test]
    fn qm_three_always_qm_and_sparing_with_color_three() {
        for seed in 0..30u64 {
            let g = random_gnp(12, 1, 3, seed).unwrap();
            let c = qm_three_coloring(&g);
            assert!(is_quasi_majority(&g, &c), "seed {seed}");
            // at most one color-3 edge per component
            for comp in g.components() {
                let threes = g
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|&(e, &(u, _))| comp.binary_search(&u).is_ok() && c.color(e) == 3)
                    .count();
                assert!(threes <= 1, "seed {seed}");
            }
        }
    }

    #[test]
    fn majority_two_presence() {
        let c4 = generate(&FamilySpec::Cycle { n: 4 }).unwrap();
        let c = majority_two_coloring(&c4).unwrap();
        for v in 0..4 {
            assert_eq!(c.count(v, 1), 1);
        }
        assert!(majority_two_coloring(&generate(&FamilySpec::Cycle { n: 3 }).unwrap()).is_none());
        assert!(majority_two_coloring(&generate(&FamilySpec::Path { n: 3 }).unwrap()).is_none());
    }

    #[test]
    fn majority_four_small_cases() {
        let c3 = generate(&FamilySpec::Cycle { n: 3 }).unwrap();
        let c = majority_four_coloring(&c3).unwrap();
        for v in 0..3 {
            for col in 1..=4 {
                assert!(c.count(v, col) <= 1);
            }
        }
        let k5 = generate(&FamilySpec::Complete { n: 5 }).unwrap();
        let c = majority_four_coloring(&k5).unwrap();
        assert!(is_majority(&k5, &c));
        for v in 0..5 {
            for col in 1..=4 {
                assert!(c.count(v, col) <= 2, "4-regular vertices see each color at most twice");
            }
        }
    }

    #[test]
    fn majority_four_rejects_low_degree() {
        let p3 = generate(&FamilySpec::Path { n: 3 }).unwrap();
        assert!(majority_four_coloring(&p3).is_err());
    }

    #[test]
    fn majority_four_on_seeded_corpus() {
        for seed in 0..40u64 {
            let g = crate::graph::force_min_degree_two(&random_gnp(14, 1, 6, seed).unwrap(), seed ^ 0x9e37);
            let c = majority_four_coloring(&g).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            assert!(is_majority(&g, &c), "seed {seed}");
            assert!(c.max_color() <= 4);
            let _ = Mode::Majority;
        }
    }

    #[test]
    fn qm_split_bound_holds_everywhere() {
        for seed in 0..25u64 {
            let g = random_gnp(13, 1, 2, seed).unwrap();
            if let Some(c) = qm_two_coloring(&g) {
                for v in 0..g.n() {
                    let cap = g.degree(v).div_ceil(2) as u32;
                    assert!(c.count(v, 1) <= cap && c.count(v, 2) <= cap);
                }
            }
        }
    }
}
