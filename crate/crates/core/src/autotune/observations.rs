use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{AutotuneError, LabeledPoint, Result};
use crate::Precision;

/// What a dataset's label means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetKind {
    /// Label is the optimum sub-system size `m`; timing keys are sizes.
    SubsystemSize,
    /// Label is the optimum recursion depth `R`; timing keys are depths.
    RecursionDepth,
}

/// Which label column to learn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelSource {
    Observed,
    Corrected,
}

/// Measurements for one system size.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationRow {
    pub n: u64,
    /// Fastest candidate as observed.
    pub label: u32,
    pub corrected_label: Option<u32>,
    /// CUDA stream count of the original run; carried through untouched.
    pub streams: Option<u32>,
    /// Milliseconds per candidate.
    pub times: Option<BTreeMap<u32, f64>>,
}

impl ObservationRow {
    pub fn new(n: u64, label: u32) -> Self {
        Self { n, label, corrected_label: None, streams: None, times: None }
    }

    pub fn with_times(mut self, times: BTreeMap<u32, f64>) -> Self {
        self.times = Some(times);
        self
    }

    pub fn with_corrected(mut self, label: u32) -> Self {
        self.corrected_label = Some(label);
        self
    }

    pub fn with_streams(mut self, streams: u32) -> Self {
        self.streams = Some(streams);
        self
    }
}

/// Rows for one (device, precision) pair, sorted by `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet {
    kind: DatasetKind,
    precision: Precision,
    device: String,
    rows: Vec<ObservationRow>,
}

impl ObservationSet {
    pub fn new(kind: DatasetKind, precision: Precision, device: impl Into<String>, mut rows: Vec<ObservationRow>) -> Result<Self> {
        let device = device.into();
        if device.is_empty() || device.contains([',', '\n', '\r', '"']) {
            return Err(AutotuneError::InvalidObservations(format!("unusable device name {device:?}")));
        }
        rows.sort_by_key(|r| r.n);
        for pair in rows.windows(2) {
            if pair[0].n == pair[1].n {
                return Err(AutotuneError::InvalidObservations(format!("duplicate N={}", pair[0].n)));
            }
        }
        for row in &rows {
            if row.n == 0 {
                return Err(AutotuneError::InvalidObservations("N must be positive".into()));
            }
            if let Some(times) = &row.times {
                if !times.contains_key(&row.label) {
                    return Err(AutotuneError::InvalidObservations(format!(
                        "N={}: timing table lacks the label {}",
                        row.n, row.label
                    )));
                }
                if let Some((m, t)) = times.iter().find(|(_, t)| !t.is_finite() || **t < 0.0) {
                    return Err(AutotuneError::InvalidObservations(format!("N={}: bad time {t} for {m}", row.n)));
                }
            }
        }
        Ok(Self { kind, precision, device, rows })
    }

    pub fn kind(&self) -> DatasetKind {
        self.kind
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn device(&self) -> &str {
        &self.device
    }

    pub fn rows(&self) -> &[ObservationRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(N, label)` pairs from the chosen column.
    pub fn points(&self, source: LabelSource) -> Result<Vec<LabeledPoint>> {
        self.rows
            .iter()
            .map(|r| match source {
                LabelSource::Observed => Ok(LabeledPoint::new(r.n, r.label)),
                LabelSource::Corrected => r
                    .corrected_label
                    .map(|l| LabeledPoint::new(r.n, l))
                    .ok_or(AutotuneError::MissingCorrectedLabel { n: r.n }),
            })
            .collect()
    }

    pub fn labels(&self, source: LabelSource) -> Result<BTreeSet<u32>> {
        Ok(self.points(source)?.into_iter().map(|p| p.label).collect())
    }

    /// Copy with `corrected_label` replaced row by row.
    pub fn with_corrected_labels(&self, corrected: &[u32]) -> Result<Self> {
        if corrected.len() != self.rows.len() {
            return Err(AutotuneError::InvalidObservations(format!(
                "{} corrected labels for {} rows",
                corrected.len(),
                self.rows.len()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(corrected)
            .map(|(r, &c)| ObservationRow { corrected_label: Some(c), ..r.clone() })
            .collect();
        Ok(Self { rows, ..self.clone() })
    }
}
