//! Thomas baseline and the three-stage partition method.
//!
//! Stage 1 reduces every block of a [`PartitionPlan`] to two interface
//! equations ([`reduce_block`]), stage 2 assembles and solves the interface
//! system ([`assemble_interface`]), stage 3 recovers the block interiors
//! ([`back_substitute`]). Stages 1 and 3 run across blocks on the rayon pool.

mod partition;
mod plan;
mod reduce;
mod system;
mod thomas;

#[cfg(test)]
pub(crate) mod dense;

use thiserror::Error;

pub use partition::{solve_partition, solve_partition_observed, RecursionPolicy};
pub use plan::{make_plan, PartitionPlan};
pub use reduce::{
    assemble_interface, back_substitute, reduce_block, InteriorRow, InterfaceEquation,
    ReducedBlock,
};
pub use system::{residual_inf, TridiagonalSystem};
pub use thomas::thomas_solve;

/// Pivots smaller than this in magnitude are treated as zero.
pub const ZERO_PIVOT: f64 = 1e-30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("zero pivot at row {row}")]
    ZeroPivot { row: usize },
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("invalid recursion policy: {0}")]
    InvalidPolicy(String),
}

pub type Result<T, E = SolverError> = std::result::Result<T, E>;
