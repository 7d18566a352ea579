//! Command-line front end: generate, color, verify, index, check-theorems.
//!
//! Exit codes: 0 success, 1 verification or theorem-table mismatch,
//! 2 usage or input error. The `NSD_FORGE_THREADS` environment variable
//! caps worker parallelism.

use clap::{Args, Parser, Subcommand, ValueEnum};
use nsd_forge::cli::{self, Strategy, TheoremsConfig};
use nsd_forge::coloring::{parse_coloring, verify, Mode};
use nsd_forge::error::Error;
use nsd_forge::graph::{self, FamilySpec, Graph};
use nsd_forge::solver::SearchBudget;
use std::io::Read;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "nsd-forge", version, about = "Quasi-majority and majority NSD edge colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatOpt {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeOpt {
    Qm,
    Majority,
}

impl From<ModeOpt> for Mode {
    fn from(m: ModeOpt) -> Mode {
        match m {
            ModeOpt::Qm => Mode::QuasiMajority,
            ModeOpt::Majority => Mode::Majority,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyOpt {
    Auto,
    Family,
    Bipartite6,
    Maxdeg4,
    Kalkowski,
    DeltaBound,
    Exact,
}

impl From<StrategyOpt> for Strategy {
    fn from(s: StrategyOpt) -> Strategy {
        match s {
            StrategyOpt::Auto => Strategy::Auto,
            StrategyOpt::Family => Strategy::Family,
            StrategyOpt::Bipartite6 => Strategy::Bipartite6,
            StrategyOpt::Maxdeg4 => Strategy::Maxdeg4,
            StrategyOpt::Kalkowski => Strategy::Kalkowski,
            StrategyOpt::DeltaBound => Strategy::DeltaBound,
            StrategyOpt::Exact => Strategy::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyOpt {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Star,
    RandomTree,
    RandomGnp,
}

#[derive(Args)]
struct BudgetArgs {
    /// palette ceiling for exact searches
    #[arg(long, default_value_t = 18)]
    max_k: usize,
    /// search-node cap
    #[arg(long, default_value_t = 500_000_000)]
    node_limit: u64,
    /// wall-clock cap in seconds
    #[arg(long, default_value_t = 120)]
    time_limit_secs: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget::new(self.max_k, self.node_limit, Duration::from_secs(self.time_limit_secs))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member and print it
    Generate {
        #[arg(long, value_enum)]
        family: FamilyOpt,
        /// vertex count (leaf count for star, first side for complete-bipartite)
        #[arg(long)]
        n: usize,
        /// second side for complete-bipartite
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        p_num: u64,
        #[arg(long, default_value_t = 2)]
        p_den: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatOpt,
        /// output path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct a verified coloring
    Color {
        /// input path or "-" for stdin
        input: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatOpt,
        #[arg(long, value_enum, default_value = "qm")]
        mode: ModeOpt,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyOpt,
        /// palette size for the exact strategy (exact index when omitted)
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring against a graph
    Verify {
        input: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatOpt,
        /// coloring JSON path or "-" for stdin
        #[arg(long)]
        coloring: String,
        #[arg(long, value_enum, default_value = "qm")]
        mode: ModeOpt,
        /// palette bound; the coloring's own k when omitted
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact index by exhaustive search
    Index {
        input: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatOpt,
        #[arg(long, value_enum, default_value = "qm")]
        mode: ModeOpt,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reproduce the per-family index tables against the oracle
    CheckTheorems {
        #[arg(long, default_value_t = 10)]
        max_path: usize,
        #[arg(long, default_value_t = 12)]
        max_cycle: usize,
        #[arg(long, default_value_t = 6)]
        max_complete: usize,
        #[arg(long, default_value_t = 4)]
        max_bipartite: usize,
        #[arg(long, default_value_t = 200)]
        trees: usize,
        #[arg(long, default_value_t = 12)]
        max_tree_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// run the oracle only on instances with at most this many edges
        #[arg(long, default_value_t = 12)]
        oracle_edges: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// emit a JSON array instead of TSV
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::invalid(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("reading {path}: {e}")))
    }
}

fn read_graph(path: &str, format: FormatOpt) -> Result<Graph, Error> {
    let text = read_input(path)?;
    match format {
        FormatOpt::Graph6 => graph::parse_graph6(&text),
        FormatOpt::Edgelist => graph::parse_edgelist(&text),
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::invalid(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Generate { family, n, m, p_num, p_den, seed, format, output } => {
            let spec = match family {
                FamilyOpt::Path => FamilySpec::Path { n },
                FamilyOpt::Cycle => FamilySpec::Cycle { n },
                FamilyOpt::Complete => FamilySpec::Complete { n },
                FamilyOpt::CompleteBipartite => FamilySpec::CompleteBipartite {
                    n,
                    m: m.ok_or_else(|| Error::invalid("complete-bipartite needs --m"))?,
                },
                FamilyOpt::Star => FamilySpec::Star { leaves: n },
                FamilyOpt::RandomTree => FamilySpec::RandomTree { n, seed },
                FamilyOpt::RandomGnp => FamilySpec::RandomGnp { n, p_num, p_den, seed },
            };
            let g = graph::generate(&spec)?;
            let text = match format {
                FormatOpt::Graph6 => format!("{}\n", graph::emit_graph6(&g)),
                FormatOpt::Edgelist => graph::emit_edgelist(&g),
            };
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Color { input, format, mode, strategy, k, budget, output } => {
            let g = read_graph(&input, format)?;
            let out = cli::run_color(&g, mode.into(), strategy.into(), k, &budget.budget())?;
            write_output(&output, &json_line(&out))?;
            Ok(if out.report.pass { 0 } else { 1 })
        }
        Command::Verify { input, format, coloring, mode, k, output } => {
            let g = read_graph(&input, format)?;
            let text = read_input(&coloring)?;
            let c = parse_coloring(&text, &g)?;
            let k = k.unwrap_or_else(|| c.k());
            let report = verify(&g, &c, mode.into(), k);
            let pass = report.pass;
            write_output(&output, &json_line(&report))?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Index { input, format, mode, budget, output } => {
            let g = read_graph(&input, format)?;
            let out = cli::run_index(&g, mode.into(), &budget.budget())?;
            write_output(&output, &json_line(&out))?;
            Ok(0)
        }
        Command::CheckTheorems {
            max_path,
            max_cycle,
            max_complete,
            max_bipartite,
            trees,
            max_tree_n,
            seed,
            oracle_edges,
            budget,
            json,
            output,
        } => {
            let cfg = TheoremsConfig {
                max_path,
                max_cycle,
                max_complete,
                max_bipartite,
                trees,
                max_tree_n,
                seed,
                oracle_edge_limit: oracle_edges,
                budget: budget.budget(),
            };
            let (rows, all_ok) = cli::run_check_theorems(&cfg)?;
            let text = if json {
                json_line(&rows)
            } else {
                let mut t = String::from("family\tparams\tconstructed_k\toracle_k\tmatch\n");
                for row in &rows {
                    t.push_str(&row.tsv());
                    t.push('\n');
                }
                t
            };
            write_output(&output, &text)?;
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("{}", serde_json::json!({ "error": err.to_string() }));
            std::process::exit(2);
        }
    }
}
