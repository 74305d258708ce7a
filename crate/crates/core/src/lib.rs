//! Exact solvers for the shortest common superstring problem.
//!
//! The problem reduces to a maximum-weight Hamiltonian path in the overlap
//! digraph of the input strings. This crate ships three solvers over that
//! reduction:
//!
//! - a permutation [`oracle`] for ground truth at tiny sizes,
//! - the classical subset-DP solver ([`dp`]), and
//! - a hybrid solver ([`solve_hybrid`]) that fills the DP table only up to a
//!   small threshold and resolves the rest with three nested maximum-finding
//!   searches, simulated classically while a [`qmax::QueryLedger`] charges
//!   each search its square-root query cost.
//!
//! [`cost`] predicts both the table size and the charged query totals in
//! closed form, so runs can be checked against the accounting exactly.

pub mod cli;
pub mod cost;
pub mod dp;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod overlap;
pub mod plan;
pub mod qmax;
pub mod subset;
pub mod weight;

mod hybrid;

pub use hybrid::{
    middle_search, nested_search, solve, solve_classical, solve_hybrid, LeafKey, Solution,
    SolveError, SolveMode, CLASSICAL_MAX_N, HYBRID_MAX_N,
};
pub use instance::{preprocess, Instance, Preprocessed};
pub use overlap::{build_graph, max_overlap, superstring_from_path, OverlapGraph, Path};
pub use plan::{plan_levels, LevelPlan, DEFAULT_ALPHA};
pub use qmax::{QMaxConfig, QMaxMode, QueryLedger};
pub use weight::Weight;
