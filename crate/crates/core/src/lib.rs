//! Deterministic (1 - ε)-approximation for the Partition problem in
//! near-linear time.
//!
//! The solver reduces Partition to a family of bounded-window subset-sum
//! approximation problems, solves each with a tree of approximate sumsets
//! over magnitude-dependent rounded ("μ-canonical") sets, and recovers an
//! explicit witness subset through every transformation.
//!
//! Module map:
//! - [`intset`]: sorted integer sets and exact capped sumsets.
//! - [`canonical`]: μ-canonical rounding, the approximate sumset `⊕_μ`,
//!   and witness-pair recovery.
//! - [`reduced`]: the sumset tree solver for bounded-window subproblems.
//! - [`pipeline`]: the reduction from Partition and the end-to-end solver.
//! - [`oracle`]: exact dynamic programs and approximation checkers.

pub mod canonical;
pub mod error;
pub mod intset;
mod ntt;
pub mod oracle;
pub mod pipeline;
pub mod reduced;
pub mod stats;

pub use canonical::{MuCanonicalSet, Precision};
pub use error::{Error, Result};
pub use intset::IntegerSet;
pub use pipeline::{
    solve_partition, solve_partition_timed, Epsilon, PartitionInstance, PartitionSolution,
    SolverConfig, StageTimings,
};
pub use reduced::{solve_rp, RpInstance, RpResult, ThresholdConstant};
