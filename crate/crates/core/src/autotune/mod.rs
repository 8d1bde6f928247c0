//! Learns the best sub-system size `m` and recursion depth `R` from
//! benchmark observations.
//!
//! Features are `log10(N)`; the classifier is a plain k-nearest-neighbour
//! vote. Distance ties go to the smaller `N`, vote ties to the smaller label.

mod alignment;
mod knn;
mod metrics;
mod observations;
mod plateau;
mod recursion;
mod split;

use thiserror::Error;

use crate::solver::SolverError;

pub use alignment::{alignment_report, AlignmentEntry, AlignmentReport, ALIGNMENT_MIN_SIZE};
pub use knn::{fit_knn, FeatureTransform, HeuristicModel, ModelMetadata, Target};
pub use metrics::{accuracy, evaluate, null_accuracy, MetricsReport, PredictionRecord};
pub use observations::{DatasetKind, LabelSource, ObservationRow, ObservationSet};
pub use plateau::{apply_plateau_correction, plateau_correct, DEFAULT_TOLERANCE};
pub use recursion::{fit_depth_model, recursion_sizes, FIXED_SECOND_LEVEL_SIZE, MAX_DEPTH};
pub use split::{grid_search_k, split, GridSearch, SplitSpec, DEFAULT_FOLDS};

/// Seed shipped for the split and cross-validation folds.
pub const DEFAULT_SEED: u64 = 251;

/// One training or test example: a system size and its optimum label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledPoint {
    pub n: u64,
    pub label: u32,
}

impl LabeledPoint {
    pub fn new(n: u64, label: u32) -> Self {
        Self { n, label }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AutotuneError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("test set is empty")]
    EmptyTestSet,
    #[error("k = {k} exceeds the {available} training points")]
    KTooLarge { k: usize, available: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("need at least {needed} rows, have {have}")]
    TooFewRows { needed: usize, have: usize },
    #[error("label {label} is too rare to keep in the training set")]
    LabelTooRare { label: u32 },
    #[error("test fraction {0} is outside (0, 1)")]
    InvalidFraction(f64),
    #[error("tolerance {0} must be finite and non-negative")]
    InvalidTolerance(f64),
    #[error("row N={n} has no timing table")]
    MissingTimes { n: u64 },
    #[error("row N={n} has no corrected label")]
    MissingCorrectedLabel { n: u64 },
    #[error("recursion depth {0} is outside 0..={max}", max = MAX_DEPTH)]
    DepthOutOfRange(usize),
    #[error("invalid observations: {0}")]
    InvalidObservations(String),
    #[error("wrong dataset kind: expected {expected:?}, found {found:?}")]
    WrongKind { expected: DatasetKind, found: DatasetKind },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

pub type Result<T, E = AutotuneError> = std::result::Result<T, E>;

/// Most frequent label, ties to the smaller one.
pub(crate) fn mode_label<I: IntoIterator<Item = u32>>(labels: I) -> Option<u32> {
    let mut counts = std::collections::BTreeMap::new();
    for l in labels {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    // BTreeMap iterates in ascending label order; `max_by_key` keeps the last
    // maximum, so reverse to keep the first.
    counts.into_iter().rev().max_by_key(|&(_, c)| c).map(|(l, _)| l)
}
