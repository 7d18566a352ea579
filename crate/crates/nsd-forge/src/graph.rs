//! Simple undirected graphs with canonical 0-based vertex indexing,
//! family generators, and the graph6 / edge-list interchange formats.
//!
//! Edges are stored as ordered pairs `(min, max)` in lexicographic order;
//! the position of an edge in that order is its *edge index*, which is the
//! canonical alignment for coloring serialization.

use crate::error::{Error, Result};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// adjacency: for each vertex, sorted `(neighbor, edge index)` pairs
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from a vertex count and an edge list.
    /// Duplicate edges are merged; self-loops and out-of-range endpoints are errors.
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for &(u, v) in edge_list {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) has an endpoint out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted_edges(n, set.into_iter().collect()))
    }

    fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, idx));
            adj[v].push((u, idx));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic `(min,max)` order; the slice index is the edge index.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Sorted `(neighbor, edge index)` pairs of `v`.
    pub fn adj(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Connected components, each a sorted vertex list; the list of
    /// components is sorted by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                for &(u, _) in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// True when no connected component is a single edge on two vertices.
    pub fn is_nice(&self) -> bool {
        self.components()
            .iter()
            .all(|c| !(c.len() == 2 && self.degree(c[0]) == 1))
    }

    /// Two-sides partition if the graph is bipartite, `None` otherwise.
    ///
    /// Deterministic: BFS from the smallest vertex of each component, with the
    /// start vertex placed in the first side.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut side = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if side[s] != usize::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(u, _) in &self.adj[v] {
                    if side[u] == usize::MAX {
                        side[u] = 1 - side[v];
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        let v1 = (0..self.n).filter(|&v| side[v] == 0).collect();
        let v2 = (0..self.n).filter(|&v| side[v] == 1).collect();
        Some((v1, v2))
    }

    /// Graph on the same vertex set keeping only the listed edge indices.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        let mut edges: Vec<(usize, usize)> = keep.iter().map(|&e| self.edges[e]).collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_edges(self.n, edges)
    }
}

/// Parametric description of a generator family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { n: usize, m: usize },
    Star { leaves: usize },
    RandomTree { n: usize, seed: u64 },
    RandomGnp { n: usize, p_num: u64, p_den: u64, seed: u64 },
}

/// Deterministically generates a member of the family.
/// Seeded families use the stream of [`ChaCha8Rng`], so the same seed gives
/// the same graph on every platform.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Path { n } => {
            if n == 0 {
                return Err(Error::invalid("path needs n >= 1"));
            }
            Graph::build(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(Error::invalid("cycle needs n >= 3"));
            }
            Graph::build(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
        }
        FamilySpec::Complete { n } => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::build(n, &edges)
        }
        FamilySpec::CompleteBipartite { n, m } => {
            if n == 0 || m == 0 {
                return Err(Error::invalid("complete bipartite needs n,m >= 1"));
            }
            let mut edges = Vec::new();
            for a in 0..n {
                for b in 0..m {
                    edges.push((a, n + b));
                }
            }
            Graph::build(n + m, &edges)
        }
        FamilySpec::Star { leaves } => {
            if leaves == 0 {
                return Err(Error::invalid("star needs at least one leaf"));
            }
            Graph::build(leaves + 1, &(1..=leaves).map(|v| (0, v)).collect::<Vec<_>>())
        }
        FamilySpec::RandomTree { n, seed } => random_tree(n, seed),
        FamilySpec::RandomGnp { n, p_num, p_den, seed } => random_gnp(n, p_num, p_den, seed),
    }
}

/// Uniform random labelled tree from a seeded Pruefer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("random tree needs n >= 1"));
    }
    if n == 1 {
        return Graph::build(1, &[]);
    }
    if n == 2 {
        return Graph::build(2, &[(0, 1)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pruefer: Vec<usize> = (0..n - 2).map(|_| (rng.next_u64() % n as u64) as usize).collect();
    let mut degree = vec![1usize; n];
    for &v in &pruefer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &v in &pruefer {
        let leaf = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&leaf);
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut it = leaves.into_iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    edges.push((a, b));
    Graph::build(n, &edges)
}

/// G(n, p) with p = p_num / p_den, sampled pair by pair in lexicographic
/// order with an exact integer threshold on raw `u64` draws.
pub fn random_gnp(n: usize, p_num: u64, p_den: u64, seed: u64) -> Result<Graph> {
    if p_den == 0 || p_num > p_den {
        return Err(Error::invalid("probability must satisfy 0 <= p_num/p_den <= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold: u128 = (p_num as u128) << 64;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let draw = rng.next_u64() as u128 * p_den as u128;
            if draw < threshold {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges)
}

/// Removes the edge of every two-vertex component, leaving isolated vertices.
/// The result is always nice.
pub fn drop_k2_components(g: &Graph) -> Graph {
    let mut keep: Vec<usize> = (0..g.m()).collect();
    for comp in g.components() {
        if comp.len() == 2 && g.degree(comp[0]) == 1 {
            let e = g.edge_index(comp[0], comp[1]).unwrap();
            keep.retain(|&x| x != e);
        }
    }
    g.edge_subgraph(&keep)
}

/// Deterministically deletes edges until every degree is at most `cap`.
/// Scans vertices in increasing order and removes their highest-indexed edges.
pub fn cap_max_degree(g: &Graph, cap: usize) -> Graph {
    let mut alive = vec![true; g.m()];
    let mut deg = g.degrees();
    for v in 0..g.n() {
        if deg[v] <= cap {
            continue;
        }
        for &(u, e) in g.adj(v).iter().rev() {
            if deg[v] <= cap {
                break;
            }
            if alive[e] {
                alive[e] = false;
                deg[v] -= 1;
                deg[u] -= 1;
            }
        }
    }
    let keep: Vec<usize> = (0..g.m()).filter(|&e| alive[e]).collect();
    g.edge_subgraph(&keep)
}

/// Adds seeded random edges until every vertex has degree at least 2.
pub fn force_min_degree_two(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<(usize, usize)> = g.edges().iter().copied().collect();
    let n = g.n();
    if n < 3 {
        return g.clone();
    }
    let mut deg = g.degrees();
    for v in 0..n {
        while deg[v] < 2 {
            let mut u = (rng.next_u64() % n as u64) as usize;
            let mut guard = 0;
            while u == v || edges.contains(&(u.min(v), u.max(v))) {
                u = (rng.next_u64() % n as u64) as usize;
                guard += 1;
                if guard > 16 * n {
                    // fall back to the first admissible partner
                    u = (0..n)
                        .find(|&w| w != v && !edges.contains(&(w.min(v), w.max(v))))
                        .expect("n >= 3 leaves an available partner");
                    break;
                }
            }
            edges.insert((u.min(v), u.max(v)));
            deg[v] += 1;
            deg[u] += 1;
        }
    }
    Graph::build(n, &edges.into_iter().collect::<Vec<_>>()).expect("edges stay valid")
}

// ---------------------------------------------------------------------------
// graph6
// ---------------------------------------------------------------------------

/// Parses a graph6 string (optionally prefixed with `>>graph6<<`).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r', ' ']);
    let (body, base) = match text.strip_prefix(">>graph6<<") {
        Some(rest) => (rest, ">>graph6<<".len()),
        None => (text, 0),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse { offset: base, message: "empty graph6 string".into() });
    }
    let pos;
    let check = |b: u8, at: usize| -> Result<u64> {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse {
                offset: base + at,
                message: format!("byte 0x{b:02x} outside graph6 alphabet"),
            });
        }
        Ok((b - 63) as u64)
    };
    let n: u64 = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(Error::Parse { offset: base + 2, message: "truncated 8-byte order".into() });
            }
            pos = 8;
            let mut v = 0u64;
            for (i, &b) in bytes[2..8].iter().enumerate() {
                v = (v << 6) | check(b, 2 + i)?;
            }
            v
        } else {
            if bytes.len() < 4 {
                return Err(Error::Parse { offset: base + 1, message: "truncated 4-byte order".into() });
            }
            pos = 4;
            let mut v = 0u64;
            for (i, &b) in bytes[1..4].iter().enumerate() {
                v = (v << 6) | check(b, 1 + i)?;
            }
            v
        }
    } else {
        pos = 1;
        check(bytes[0], 0)?
    };
    let n = usize::try_from(n).map_err(|_| Error::Parse { offset: base, message: "order too large".into() })?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() < pos + bytes_needed {
        return Err(Error::Parse {
            offset: base + bytes.len(),
            message: format!("need {} data bytes, found {}", bytes_needed, bytes.len() - pos),
        });
    }
    if bytes.len() > pos + bytes_needed {
        return Err(Error::Parse {
            offset: base + pos + bytes_needed,
            message: "trailing bytes after graph6 data".into(),
        });
    }
    let mut edges = Vec::new();
    let mut bit_idx = 0usize;
    // column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = check(bytes[pos + bit_idx / 6], pos + bit_idx / 6)?;
            let bit = (byte >> (5 - bit_idx % 6)) & 1;
            if bit == 1 {
                edges.push((u, v));
            }
            bit_idx += 1;
            if bit_idx > bits_needed {
                break 'outer;
            }
        }
    }
    Graph::build(n, &edges)
}

/// Emits the canonical graph6 encoding.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258047 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push(126 as char);
        out.push(126 as char);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    let mut bit_idx = 0usize;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                packed[bit_idx / 6] |= 1 << (5 - bit_idx % 6);
            }
            bit_idx += 1;
        }
    }
    for b in packed {
        out.push((b + 63) as char);
    }
    out
}

// ---------------------------------------------------------------------------
// plain edge list: header "n m", then one "u v" line per edge
// ---------------------------------------------------------------------------

pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut offset = 0usize;
    let mut lines = Vec::new();
    for line in text.lines() {
        lines.push((offset, line));
        offset += line.len() + 1;
    }
    let mut rows = lines
        .into_iter()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hoff, header) = rows
        .next()
        .ok_or(Error::Parse { offset: 0, message: "missing 'n m' header".into() })?;
    let mut it = header.split_whitespace();
    let parse_num = |tok: Option<&str>, at: usize| -> Result<usize> {
        tok.ok_or(Error::Parse { offset: at, message: "expected an integer".into() })?
            .parse::<usize>()
            .map_err(|e| Error::Parse { offset: at, message: e.to_string() })
    };
    let n = parse_num(it.next(), hoff)?;
    let m = parse_num(it.next(), hoff)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (off, line) = rows
            .next()
            .ok_or(Error::Parse { offset: text.len(), message: format!("expected {m} edge lines") })?;
        let mut it = line.split_whitespace();
        let u = parse_num(it.next(), off)?;
        let v = parse_num(it.next(), off)?;
        edges.push((u, v));
    }
    if let Some((off, _)) = rows.next() {
        return Err(Error::Parse { offset: off, message: "trailing data after edge list".into() });
    }
    Graph::build(n, &edges)
}

pub fn emit_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

// ---------------------------------------------------------------------------
// structural family detection (used by the CLI `auto` strategy)
// ---------------------------------------------------------------------------

/// Families a concrete graph can be recognized as, with enough labelling
/// information to replay a canonical construction onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectedFamily {
    /// vertices in path order
    Path(Vec<usize>),
    /// vertices in cycle order
    Cycle(Vec<usize>),
    Complete,
    /// the two sides, each sorted
    CompleteBipartite(Vec<usize>, Vec<usize>),
    Tree,
}

/// Recognizes connected graphs that match a closed-form family.
pub fn detect_family(g: &Graph) -> Option<DetectedFamily> {
    let n = g.n();
    if n == 0 || g.components().len() != 1 {
        return None;
    }
    let m = g.m();
    if n >= 3 && m == n * (n - 1) / 2 {
        return Some(DetectedFamily::Complete);
    }
    if n >= 2 && g.max_degree() <= 2 {
        let ones = (0..n).filter(|&v| g.degree(v) == 1).count();
        if ones == 2 && m == n - 1 {
            let start = (0..n).find(|&v| g.degree(v) == 1).unwrap();
            return Some(DetectedFamily::Path(walk_from(g, start)));
        }
        if ones == 0 && m == n && n >= 3 {
            return Some(DetectedFamily::Cycle(walk_from(g, 0)));
        }
    }
    if let Some((a, b)) = g.bipartition() {
        if !a.is_empty() && !b.is_empty() && m == a.len() * b.len() {
            return Some(DetectedFamily::CompleteBipartite(a, b));
        }
    }
    if m == n - 1 {
        return Some(DetectedFamily::Tree);
    }
    None
}

fn walk_from(g: &Graph, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).find(|&u| u != prev);
        match next {
            Some(u) if u != start => {
                order.push(u);
                prev = cur;
                cur = u;
                if order.len() == g.n() {
                    break;
                }
            }
            _ => break,
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_dedups_and_checks() {
        let g = Graph::build(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert!(Graph::build(2, &[(0, 0)]).is_err());
        assert!(Graph::build(2, &[(0, 2)]).is_err());
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.degrees(), vec![1, 1]);
    }

    #[test]
    fn family_sizes_match_closed_forms() {
        for n in 1..10 {
            let p = generate(&FamilySpec::Path { n }).unwrap();
            assert_eq!(p.m(), n - 1);
        }
        for n in 3..10 {
            assert_eq!(generate(&FamilySpec::Cycle { n }).unwrap().m(), n);
            assert_eq!(generate(&FamilySpec::Complete { n }).unwrap().m(), n * (n - 1) / 2);
        }
        for n in 1..6 {
            for m in 1..6 {
                let g = generate(&FamilySpec::CompleteBipartite { n, m }).unwrap();
                assert_eq!(g.m(), n * m);
            }
        }
        let p3 = generate(&FamilySpec::Path { n: 3 }).unwrap();
        assert_eq!(p3.degrees(), vec![1, 2, 1]);
        let p4 = generate(&FamilySpec::Path { n: 4 }).unwrap();
        assert_eq!(p4.degrees(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn nice_detection() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert!(!k2.is_nice());
        let p3 = generate(&FamilySpec::Path { n: 3 }).unwrap();
        assert!(p3.is_nice());
        // K2 plus a triangle
        let g = Graph::build(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!g.is_nice());
        let empty = Graph::build(0, &[]).unwrap();
        assert!(empty.is_nice());
        assert!(empty.components().is_empty());
    }

    #[test]
    fn bipartition_examples() {
        let c4 = generate(&FamilySpec::Cycle { n: 4 }).unwrap();
        assert_eq!(c4.bipartition(), Some((vec![0, 2], vec![1, 3])));
        let c5 = generate(&FamilySpec::Cycle { n: 5 }).unwrap();
        assert_eq!(c5.bipartition(), None);
        let k33 = generate(&FamilySpec::CompleteBipartite { n: 3, m: 3 }).unwrap();
        let (a, b) = k33.bipartition().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
        for &x in &a {
            for &y in &a {
                assert!(!k33.has_edge(x, y) || x == y);
            }
        }
        let _ = b;
    }

    #[test]
    fn components_example() {
        let g = Graph::build(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn graph6_k4() {
        let g = parse_graph6("C~").unwrap();
        let k4 = generate(&FamilySpec::Complete { n: 4 }).unwrap();
        assert_eq!(g, k4);
        assert_eq!(emit_graph6(&k4), "C~");
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        match parse_graph6("C") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C\x1f\x1f").is_err());
    }

    #[test]
    fn graph6_roundtrip_on_families() {
        let mut specs = vec![];
        for n in 1..=32 {
            specs.push(FamilySpec::Path { n });
            specs.push(FamilySpec::Complete { n: n.min(12) });
            if n >= 3 {
                specs.push(FamilySpec::Cycle { n });
            }
        }
        specs.push(FamilySpec::RandomGnp { n: 20, p_num: 1, p_den: 3, seed: 5 });
        for spec in specs {
            let g = generate(&spec).unwrap();
            let s = emit_graph6(&g);
            let back = parse_graph6(&s).unwrap();
            assert_eq!(back, g, "round trip failed for {spec:?}");
            assert_eq!(emit_graph6(&back), s);
        }
    }

    #[test]
    fn edgelist_roundtrip_and_errors() {
        let g = generate(&FamilySpec::CompleteBipartite { n: 2, m: 3 }).unwrap();
        let text = emit_edgelist(&g);
        assert_eq!(parse_edgelist(&text).unwrap(), g);
        assert!(parse_edgelist("3 2\n0 1\n").is_err());
        assert!(parse_edgelist("").is_err());
    }

    #[test]
    fn seeded_generators_are_reproducible() {
        let a = random_gnp(16, 1, 2, 42).unwrap();
        let b = random_gnp(16, 1, 2, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_gnp(16, 1, 2, 43).unwrap());
        let t = random_tree(10, 7).unwrap();
        assert_eq!(t, random_tree(10, 7).unwrap());
        assert_eq!(t.m(), 9);
        assert_eq!(t.components().len(), 1);
    }

    #[test]
    fn conditioning_helpers() {
        let g = random_gnp(20, 1, 4, 11).unwrap();
        let capped = cap_max_degree(&g, 4);
        assert!(capped.max_degree() <= 4);
        let nice = drop_k2_components(&capped);
        assert!(nice.is_nice());
        let d2 = force_min_degree_two(&random_gnp(12, 1, 6, 3).unwrap(), 9);
        assert!(d2.min_degree() >= 2);
    }

    #[test]
    fn detect_families() {
        let p5 = generate(&FamilySpec::Path { n: 5 }).unwrap();
        assert!(matches!(detect_family(&p5), Some(DetectedFamily::Path(_))));
        let c6 = generate(&FamilySpec::Cycle { n: 6 }).unwrap();
        match detect_family(&c6) {
            Some(DetectedFamily::Cycle(order)) => assert_eq!(order.len(), 6),
            other => panic!("{other:?}"),
        }
        let k5 = generate(&FamilySpec::Complete { n: 5 }).unwrap();
        assert_eq!(detect_family(&k5), Some(DetectedFamily::Complete));
        let k23 = generate(&FamilySpec::CompleteBipartite { n: 2, m: 3 }).unwrap();
        assert!(matches!(detect_family(&k23), Some(DetectedFamily::CompleteBipartite(_, _))));
        let t = random_tree(9, 1).unwrap();
        assert!(detect_family(&t).is_some());
    }
}
