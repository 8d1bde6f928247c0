//! Synthetic systems, clocks, and the `m` / `R` sweeps that produce training data.

mod clock;
mod generate;
mod sweep;

use std::path::PathBuf;

use thiserror::Error;

use crate::autotune::AutotuneError;
use crate::solver::SolverError;

pub use clock::{Clock, FakeClock, MonotonicClock};
pub use generate::{generate_system, DEFAULT_DOMINANCE};
pub use sweep::{observation_set, sweep_m, sweep_r, time_solve, SweepEntry, SweepResult, TimingStats};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("dominance factor must exceed 1, got {0}")]
    WeakDominance(f64),
    #[error("benchmark systems need at least 2 rows, got {0}")]
    TooSmall(usize),
    #[error("at least one timed run is required")]
    NoRuns,
    #[error("no candidates to sweep")]
    NoCandidates,
    #[error("solve failed: {0}")]
    SolveFailed(String),
    #[error("clock trace: {0}")]
    Trace(String),
    #[error("I/O error on {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Autotune(#[from] AutotuneError),
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
