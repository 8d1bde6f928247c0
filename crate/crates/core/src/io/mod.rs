//! File formats: the long-format observations CSV and the JSON model document.

mod model;
mod observations;

use std::path::PathBuf;

use thiserror::Error;

use crate::autotune::AutotuneError;

pub use model::{load_model, model_from_json, model_to_json, save_model, MODEL_FORMAT_VERSION};
pub use observations::{
    format_observation_sets, parse_observation_sets, read_observation_sets, read_observations,
    write_observation_sets, write_observations, OBSERVATIONS_HEADER,
};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("I/O error on {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed header: expected `{expected}`, found `{found}`", expected = OBSERVATIONS_HEADER)]
    MalformedHeader { found: String },
    #[error("line {line}: bad value `{value}` in column {column}")]
    BadNumber { line: u64, column: &'static str, value: String },
    #[error("line {line}: {reason}")]
    BadRecord { line: u64, reason: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("expected exactly one (precision, device) group, found {0}")]
    GroupCount(usize),
    #[error("model version {found} is not supported (expected {expected})", expected = MODEL_FORMAT_VERSION)]
    VersionMismatch { found: u64 },
    #[error("model schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] AutotuneError),
}

pub type Result<T, E = DataError> = std::result::Result<T, E>;

fn read_text(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| DataError::Io { path: path.to_path_buf(), source })
}

fn write_text(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| DataError::Io { path: path.to_path_buf(), source })
}
