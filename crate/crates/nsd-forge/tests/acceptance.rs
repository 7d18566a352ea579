//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use nsd_forge::bipartite::qmnsd_six;
use nsd_forge::bounded::{qmnsd_maxdeg4_with_stats, CnScanStats};
use nsd_forge::cli::{run_check_theorems, OracleCell, TheoremsConfig};
use nsd_forge::coloring::{verify, vertex_sums, EdgeColoring, Mode};
use nsd_forge::families::{color_complete, color_tree};
use nsd_forge::graph::{
    cap_max_degree, drop_k2_components, force_min_degree_two, generate, random_gnp, random_tree,
    FamilySpec, Graph,
};
use nsd_forge::kalkowski::{kalkowski_mnsd18, kalkowski_qmnsd12};
use nsd_forge::majority::{fixtures, mnsd_complete};
use nsd_forge::solver::{min_index, IndexOutcome, SearchBudget};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

fn oracle_budget() -> SearchBudget {
    SearchBudget::new(8, 2_000_000_000, Duration::from_secs(90))
}

fn exact_k(g: &Graph, mode: Mode) -> usize {
    match min_index(g, mode, &oracle_budget()).expect("oracle preconditions") {
        IndexOutcome::Exact { k, witness } => {
            assert!(verify(g, &witness, mode, k).pass, "oracle witness must verify");
            k
        }
        IndexOutcome::Unknown => panic!("oracle budget exhausted"),
    }
}

fn path(n: usize) -> Graph {
    generate(&FamilySpec::Path { n }).unwrap()
}
fn cycle(n: usize) -> Graph {
    generate(&FamilySpec::Cycle { n }).unwrap()
}
fn complete(n: usize) -> Graph {
    generate(&FamilySpec::Complete { n }).unwrap()
}
fn bipartite(n: usize, m: usize) -> Graph {
    generate(&FamilySpec::CompleteBipartite { n, m }).unwrap()
}

#[test]
fn criterion_1_exact_qm_indices() {
    let cases: Vec<(&str, Graph, usize)> = vec![
        ("P3", path(3), 2),
        ("P4", path(4), 3),
        ("P5", path(5), 3),
        ("P6", path(6), 3),
        ("P7", path(7), 3),
        ("C3", cycle(3), 3),
        ("C6", cycle(6), 3),
        ("C4", cycle(4), 4),
        ("C7", cycle(7), 4),
        ("C5", cycle(5), 5),
        ("K3", complete(3), 3),
        ("K4", complete(4), 3),
        ("K5", complete(5), 3),
        ("K22", bipartite(2, 2), 4),
        ("K23", bipartite(2, 3), 2),
        ("K33", bipartite(3, 3), 3),
    ];
    for (name, g, expect) in cases {
        let t = Instant::now();
        let k = exact_k(&g, Mode::QuasiMajority);
        let elapsed = t.elapsed();
        assert_eq!(k, expect, "{name}");
        assert!(elapsed < Duration::from_secs(10), "{name} took {elapsed:?}");
    }
    println!("[PASS] criterion 1: qm oracle indices match on all 16 instances, each under 10s");
}

#[test]
fn criterion_2_exact_majority_indices() {
    let cases: Vec<(&str, Graph, usize, u64)> = vec![
        ("K4", complete(4), 5, 10),
        ("K5", complete(5), 3, 10),
        ("K6", complete(6), 4, 60),
        ("K33", bipartite(3, 3), 5, 10),
        ("K22", bipartite(2, 2), 4, 10),
    ];
    for (name, g, expect, limit_secs) in cases {
        let t = Instant::now();
        let k = exact_k(&g, Mode::Majority);
        let elapsed = t.elapsed();
        assert_eq!(k, expect, "{name}");
        assert!(elapsed < Duration::from_secs(limit_secs), "{name} took {elapsed:?}");
    }
    println!("[PASS] criterion 2: majority oracle indices match on all 5 instances");
}

#[test]
fn criterion_3_constructor_oracle_equivalence() {
    let cfg = TheoremsConfig { budget: oracle_budget(), ..TheoremsConfig::default() };
    let (rows, all_ok) = run_check_theorems(&cfg).expect("table construction");
    assert!(all_ok, "mismatching rows: {:#?}", rows.iter().filter(|r| r.matched == "MISMATCH").collect::<Vec<_>>());
    let mut oracle_rows = 0usize;
    for row in &rows {
        match row.oracle {
            OracleCell::Exact(k) => {
                oracle_rows += 1;
                assert_eq!(k, row.constructed_k, "{row:?}");
            }
            OracleCell::Unknown => panic!("oracle budget exhausted inside the edge limit: {row:?}"),
            OracleCell::Skipped => {}
        }
    }
    assert!(oracle_rows >= 200, "expected most rows within the oracle edge budget, got {oracle_rows}");
    println!(
        "[PASS] criterion 3: {} rows, {} oracle-checked, zero mismatches",
        rows.len(),
        oracle_rows
    );
}

struct Maxdeg4Corpus {
    graphs: usize,
    stats: CnScanStats,
}

fn maxdeg4_corpus() -> &'static Maxdeg4Corpus {
    static CORPUS: OnceLock<Maxdeg4Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut total = CnScanStats::default();
        let mut graphs = 0usize;
        for i in 0..100u64 {
            let n = 8 + (i as usize * 7) % 21;
            let g = drop_k2_components(&cap_max_degree(&random_gnp(n, 3, n as u64, i).unwrap(), 4));
            let (c, stats) =
                qmnsd_maxdeg4_with_stats(&g).unwrap_or_else(|e| panic!("seed {i}: {e}"));
            assert!(verify(&g, &c, Mode::QuasiMajority, 7).pass, "seed {i}");
            total.case1_scans += stats.case1_scans;
            total.case2_scans += stats.case2_scans;
            total.base_components += stats.base_components;
            graphs += 1;
        }
        Maxdeg4Corpus { graphs, stats: total }
    })
}

#[test]
fn criterion_4_constructor_soundness_at_scale() {
    let start = Instant::now();

    let mut count12 = 0usize;
    for i in 0..200u64 {
        let n = 5 + (i as usize * 11) % 36;
        let g = drop_k2_components(&random_gnp(n, 1, (n as u64 / 4).max(2), i).unwrap());
        let c = kalkowski_qmnsd12(&g).unwrap_or_else(|e| panic!("seed {i} n={n}: {e}"));
        assert!(c.max_color() <= 12);
        assert!(verify(&g, &c, Mode::QuasiMajority, 12).pass, "seed {i}");
        count12 += 1;
    }

    let mut count18 = 0usize;
    for i in 0..100u64 {
        let n = 5 + (i as usize * 13) % 26;
        let g = force_min_degree_two(&random_gnp(n, 1, (n as u64 / 3).max(2), i ^ 0xabcd).unwrap(), i);
        let c = kalkowski_mnsd18(&g).unwrap_or_else(|e| panic!("seed {i} n={n}: {e}"));
        assert!(c.max_color() <= 18);
        assert!(verify(&g, &c, Mode::Majority, 18).pass, "seed {i}");
        count18 += 1;
    }

    let corpus = maxdeg4_corpus();
    assert_eq!(corpus.graphs, 100);

    let mut count6 = 0usize;
    for i in 0..100u64 {
        let (n1, n2) = (4 + (i as usize % 9), 4 + ((i as usize * 5) % 9));
        let g = drop_k2_components(&random_bipartite(n1, n2, 2, 5, i));
        let c = qmnsd_six(&g).unwrap_or_else(|e| panic!("seed {i}: {e}"));
        assert!(c.max_color() <= 6);
        assert!(verify(&g, &c, Mode::QuasiMajority, 6).pass, "seed {i}");
        count6 += 1;
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "suite took {elapsed:?}");
    println!(
        "[PASS] criterion 4: kalkowski12 on {count12}, mnsd18 on {count18}, maxdeg4 on {}, \
         six-coloring on {count6} graphs, all verified in {elapsed:?}",
        corpus.graphs
    );
}

fn random_bipartite(n1: usize, n2: usize, p_num: u64, p_den: u64, seed: u64) -> Graph {
    use rand::{RngCore, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let threshold: u128 = (p_num as u128) << 64;
    let mut edges = Vec::new();
    for a in 0..n1 {
        for b in 0..n2 {
            if (rng.next_u64() as u128 * p_den as u128) < threshold {
                edges.push((a, n1 + b));
            }
        }
    }
    Graph::build(n1 + n2, &edges).unwrap()
}

#[test]
fn criterion_5_structural_lemma_checks() {
    // color-2 degree profiles of the 3-color complete construction
    for n in 3..=20usize {
        let (_, c) = color_complete(n).unwrap();
        let profile: Vec<usize> = (0..n).map(|v| c.count(v, 2) as usize).collect();
        let half = n / 2;
        if n % 2 == 1 {
            let low = profile.iter().filter(|&&t| t == half - 1).count();
            let high = profile.iter().filter(|&&t| t == half).count();
            assert_eq!((low, high), (half, half + 1), "n={n}: {profile:?}");
        } else {
            let low = profile.iter().filter(|&&t| t <= half - 1).count();
            assert!(low >= half - 1, "n={n}: {profile:?}");
        }
    }
    // even majority recursion: distinct sorted sums plus the slack claim
    for n in (6..=16).step_by(2) {
        let (k_col, c) = mnsd_complete(n).unwrap();
        assert_eq!(k_col, 4);
        let g = complete(n);
        let sums = vertex_sums(&g, &c).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| sums[v]);
        assert!(
            order.windows(2).all(|w| sums[w[0]] < sums[w[1]]),
            "n={n}: sums must be pairwise distinct"
        );
        let k = n / 2;
        let slack2 = c.count(order[k - 1], 2) as usize <= k - 2;
        let slack3 = c.count(order[k], 3) as usize <= k - 2;
        assert!(slack2 || slack3, "n={n}: slack condition failed");
    }
    println!("[PASS] criterion 5: color-2 profiles (n in 3..=20) and majority slack (n in 6..=16) hold");
}

#[test]
fn criterion_6_tree_dichotomy() {
    let mut twos = 0usize;
    let mut threes = 0usize;
    for i in 0..500u64 {
        let n = 3 + (i.wrapping_mul(0x9e3779b97f4a7c15) >> 33) as usize % 12; // 3..=14
        let t = random_tree(n, i).unwrap();
        let (k, c) = color_tree(&t).unwrap_or_else(|e| panic!("seed {i}: {e}"));
        assert!(verify(&t, &c, Mode::QuasiMajority, k).pass, "seed {i}");
        let condition = t
            .edges()
            .iter()
            .any(|&(u, v)| t.degree(u) == t.degree(v) && t.degree(u) % 2 == 0);
        assert_eq!(k, if condition { 3 } else { 2 }, "seed {i}: condition/k mismatch");
        let oracle = exact_k(&t, Mode::QuasiMajority);
        assert_eq!(k, oracle, "seed {i}: tree n={n}");
        if k == 2 {
            twos += 1;
        } else {
            threes += 1;
        }
    }
    println!("[PASS] criterion 6: 500 random trees match the oracle ({twos} with k=2, {threes} with k=3)");
}

#[test]
fn criterion_7_fixture_validity() {
    for f in fixtures() {
        let g = generate(&f.spec).unwrap();
        let c = EdgeColoring::from_colors(&g, f.k, f.colors).unwrap();
        let report = verify(&g, &c, f.mode, f.k);
        assert!(report.pass, "fixture {} failed: {report:?}", f.name);
    }
    // pinned sum profiles of the two reference colorings
    let k4 = complete(4);
    let c = EdgeColoring::from_colors(&k4, 3, &[1, 2, 2, 1, 2, 3]).unwrap();
    assert_eq!(vertex_sums(&k4, &c).unwrap(), vec![5, 4, 6, 7]);
    let k6 = complete(6);
    let f = fixtures().into_iter().find(|f| f.name == "k6-mnsd4").unwrap();
    let c = EdgeColoring::from_colors(&k6, 4, f.colors).unwrap();
    let mut sums = vertex_sums(&k6, &c).unwrap();
    sums.sort_unstable();
    assert_eq!(sums, vec![9, 10, 11, 13, 14, 15]);
    println!("[PASS] criterion 7: all {} fixtures verify; pinned sum profiles reproduced", fixtures().len());
}

#[test]
fn criterion_8_selection_scans_never_empty() {
    // the corpus run errors out on any empty scan, so reaching here with
    // nonzero counters is the testable form of the guarantee
    let corpus = maxdeg4_corpus();
    assert!(corpus.stats.case1_scans > 0, "corpus must exercise the pair scan");
    assert!(corpus.stats.case2_scans > 0, "corpus must exercise the tuple scan");
    println!(
        "[PASS] criterion 8: {} pair scans and {} tuple scans across the degree-4 corpus, none empty",
        corpus.stats.case1_scans, corpus.stats.case2_scans
    );
}
