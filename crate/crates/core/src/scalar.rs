use std::fmt;
use std::str::FromStr;

use num_traits::Float;
use serde::{Deserialize, Serialize};

/// Floating-point width of a dataset or a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Fp64,
    Fp32,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Fp64 => "fp64",
            Precision::Fp32 => "fp32",
        }
    }

    /// Element size in bytes.
    pub fn width(self) -> usize {
        match self {
            Precision::Fp64 => 8,
            Precision::Fp32 => 4,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fp64" => Ok(Precision::Fp64),
            "fp32" => Ok(Precision::Fp32),
            other => Err(format!("unknown precision `{other}` (expected fp64 or fp32)")),
        }
    }
}

/// Element type accepted by the solver.
pub trait Scalar: Float + Send + Sync + fmt::Debug + fmt::Display + 'static {
    const PRECISION: Precision;
    /// Largest relative residual a benchmarked solve may have.
    const RESIDUAL_GATE: f64;

    fn cast_from(v: f64) -> Self;

    fn as_f64(self) -> f64;
}

impl Scalar for f64 {
    const PRECISION: Precision = Precision::Fp64;
    const RESIDUAL_GATE: f64 = 1e-8;

    fn cast_from(v: f64) -> Self {
        v
    }

    fn as_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    const PRECISION: Precision = Precision::Fp32;
    const RESIDUAL_GATE: f64 = 1e-4;

    fn cast_from(v: f64) -> Self {
        v as f32
    }

    fn as_f64(self) -> f64 {
        self as f64
    }
}
