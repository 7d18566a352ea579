//! Edge-coloring engine for quasi-majority and majority neighbor-sum-
//! distinguishing colorings: constructive algorithms for specific graph
//! families and degree regimes, general bounded-palette algorithms, and an
//! exact exhaustive-search oracle that cross-validates every constructor.

pub mod bipartite;
pub mod bounded;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod families;
pub mod graph;
pub mod kalkowski;
pub mod majority;
pub mod parallel;
pub mod qm;
pub mod solver;

pub use coloring::{verify, EdgeColoring, Mode, VerificationReport};
pub use error::{Error, Result};
pub use graph::{FamilySpec, Graph};
pub use solver::{IndexOutcome, SearchBudget, SearchOutcome};
