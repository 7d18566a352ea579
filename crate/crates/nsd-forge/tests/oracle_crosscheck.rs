//! Independent ground truth for the branch-and-bound solver: a naive k^m
//! enumerator with from-scratch predicate checks, compared on every small
//! instance, plus agreement between parallel and sequential search.

use nsd_forge::coloring::{verify, Mode};
use nsd_forge::graph::{drop_k2_components, generate, random_gnp, FamilySpec, Graph};
use nsd_forge::solver::{find_coloring, min_index, IndexOutcome, SearchBudget, SearchOutcome};
use std::time::Duration;

fn budget() -> SearchBudget {
    SearchBudget::new(8, 500_000_000, Duration::from_secs(60))
}

/// From-scratch check, sharing no code with the library's predicates.
fn naive_ok(n: usize, edges: &[(usize, usize)], degrees: &[usize], mode: Mode, colors: &[usize]) -> bool {
    let mut sums = vec![0u64; n];
    let mut per_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        sums[u] += colors[e] as u64;
        sums[v] += colors[e] as u64;
        per_vertex[u].push(colors[e]);
        per_vertex[v].push(colors[e]);
    }
    for v in 0..n {
        let cap = match mode {
            Mode::QuasiMajority => (degrees[v] + 1) / 2,
            Mode::Majority => degrees[v] / 2,
        };
        let mut sorted = per_vertex[v].clone();
        sorted.sort_unstable();
        let mut run = 1;
        for w in sorted.windows(2) {
            run = if w[0] == w[1] { run + 1 } else { 1 };
            if run > cap {
                return false;
            }
        }
        if degrees[v] == 1 && cap == 0 {
            return false;
        }
    }
    edges.iter().all(|&(u, v)| sums[u] != sums[v])
}

fn naive_exists(g: &Graph, mode: Mode, k: usize) -> bool {
    let m = g.m();
    if m == 0 {
        return true;
    }
    let degrees = g.degrees();
    let mut colors = vec![1usize; m];
    loop {
        if naive_ok(g.n(), g.edges(), &degrees, mode, &colors) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == m {
                return false;
            }
            colors[i] += 1;
            if colors[i] <= k {
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

fn small_instances() -> Vec<Graph> {
    let mut out = vec![
        generate(&FamilySpec::Path { n: 4 }).unwrap(),
        generate(&FamilySpec::Path { n: 6 }).unwrap(),
        generate(&FamilySpec::Cycle { n: 4 }).unwrap(),
        generate(&FamilySpec::Cycle { n: 5 }).unwrap(),
        generate(&FamilySpec::Cycle { n: 6 }).unwrap(),
        generate(&FamilySpec::Cycle { n: 7 }).unwrap(),
        generate(&FamilySpec::Complete { n: 4 }).unwrap(),
        generate(&FamilySpec::Star { leaves: 5 }).unwrap(),
        generate(&FamilySpec::CompleteBipartite { n: 2, m: 3 }).unwrap(),
        generate(&FamilySpec::CompleteBipartite { n: 2, m: 4 }).unwrap(),
    ];
    for seed in 0..12u64 {
        let g = drop_k2_components(&random_gnp(6, 1, 2, seed).unwrap());
        if g.m() >= 2 && g.m() <= 8 {
            out.push(g);
        }
    }
    for seed in 0..8u64 {
        let g = drop_k2_components(&random_gnp(8, 1, 4, 100 + seed).unwrap());
        if g.m() >= 2 && g.m() <= 8 {
            out.push(g);
        }
    }
    out
}

#[test]
fn solver_completeness_matches_naive_enumeration() {
    let mut checked = 0usize;
    for g in small_instances() {
        assert!(g.m() <= 8);
        for mode in [Mode::QuasiMajority, Mode::Majority] {
            if mode == Mode::Majority && (g.min_degree() < 2 || g.m() == 0) {
                continue;
            }
            for k in 2..=5usize {
                let expect = naive_exists(&g, mode, k);
                match find_coloring(&g, mode, k, &budget()).unwrap() {
                    SearchOutcome::Found(c) => {
                        assert!(expect, "solver found a coloring the enumerator says cannot exist");
                        assert!(verify(&g, &c, mode, k).pass, "solver witness must verify");
                    }
                    SearchOutcome::None => {
                        assert!(!expect, "solver claims none but the enumerator found one")
                    }
                    SearchOutcome::Unknown => panic!("budget exhausted on a tiny instance"),
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 100, "expected a substantive cross-check, ran {checked}");
    println!("oracle completeness cross-checked on {checked} (graph, mode, k) triples");
}

#[test]
fn min_index_is_stable_across_thread_counts() {
    // the merged parallel result must equal the sequential one
    let instances = vec![
        generate(&FamilySpec::Cycle { n: 7 }).unwrap(),
        generate(&FamilySpec::Complete { n: 5 }).unwrap(),
        generate(&FamilySpec::CompleteBipartite { n: 3, m: 3 }).unwrap(),
        drop_k2_components(&random_gnp(8, 1, 3, 5).unwrap()),
    ];
    for g in instances {
        let a = min_index(&g, Mode::QuasiMajority, &budget()).unwrap();
        let b = min_index(&g, Mode::QuasiMajority, &budget()).unwrap();
        match (a, b) {
            (IndexOutcome::Exact { k: k1, witness: w1 }, IndexOutcome::Exact { k: k2, witness: w2 }) => {
                assert_eq!(k1, k2);
                assert_eq!(w1.colors(), w2.colors(), "witness must be deterministic");
            }
            other => panic!("unexpected outcomes: {other:?}"),
        }
    }
}

#[test]
fn monotone_witnesses_stay_valid_at_larger_k() {
    for seed in 0..6u64 {
        let g = drop_k2_components(&random_gnp(7, 2, 5, seed).unwrap());
        if g.m() < 2 {
            continue;
        }
        for k in 2..=4usize {
            if let SearchOutcome::Found(w) = find_coloring(&g, Mode::QuasiMajority, k, &budget()).unwrap()
            {
                for k2 in k..=6 {
                    assert!(verify(&g, &w, Mode::QuasiMajority, k2).pass, "seed {seed} k={k}->{k2}");
                }
            }
        }
    }
}
