use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{mode_label, AutotuneError, DatasetKind, LabeledPoint, ObservationSet, Result};
use crate::Precision;

/// Map from system size to classifier feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureTransform {
    Log10,
}

impl FeatureTransform {
    pub fn apply(self, n: u64) -> f64 {
        match self {
            FeatureTransform::Log10 => (n as f64).log10(),
        }
    }
}

/// Quantity a model predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    SubsystemSize,
    RecursionDepth,
}

impl From<DatasetKind> for Target {
    fn from(kind: DatasetKind) -> Self {
        match kind {
            DatasetKind::SubsystemSize => Target::SubsystemSize,
            DatasetKind::RecursionDepth => Target::RecursionDepth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelMetadata {
    /// SHA-256 over the training pairs, one `n,label` line each.
    pub source_digest: String,
    pub device: String,
    pub precision: Precision,
    pub target: Target,
}

/// Fitted k-nearest-neighbour classifier over `log10(N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicModel {
    k: usize,
    points: Vec<LabeledPoint>,
    labels: Vec<u32>,
    transform: FeatureTransform,
    metadata: ModelMetadata,
}

fn digest(points: &[LabeledPoint]) -> String {
    let mut hasher = Sha256::new();
    for p in points {
        hasher.update(format!("{},{}\n", p.n, p.label).as_bytes());
    }
    hex::encode(hasher.finalize())
}

/// Stores the training pairs; prediction is the mode of the `k` nearest labels.
pub fn fit_knn(train: &[LabeledPoint], k: usize) -> Result<HeuristicModel> {
    if train.is_empty() {
        return Err(AutotuneError::EmptyTrainingSet);
    }
    if k == 0 {
        return Err(AutotuneError::ZeroK);
    }
    if k > train.len() {
        return Err(AutotuneError::KTooLarge { k, available: train.len() });
    }
    if train.iter().any(|p| p.n == 0) {
        return Err(AutotuneError::InvalidObservations("N must be positive".into()));
    }
    let mut points = train.to_vec();
    points.sort();
    let mut labels: Vec<u32> = points.iter().map(|p| p.label).collect();
    labels.sort_unstable();
    labels.dedup();
    let metadata = ModelMetadata {
        source_digest: digest(&points),
        device: "unknown".into(),
        precision: Precision::Fp64,
        target: Target::SubsystemSize,
    };
    Ok(HeuristicModel { k, points, labels, transform: FeatureTransform::Log10, metadata })
}

impl HeuristicModel {
    /// Reassembles a model from stored parts, re-checking its invariants.
    pub fn from_parts(
        k: usize,
        points: Vec<LabeledPoint>,
        labels: Vec<u32>,
        transform: FeatureTransform,
        metadata: ModelMetadata,
    ) -> Result<Self> {
        let mut model = fit_knn(&points, k)?;
        if model.labels != labels {
            return Err(AutotuneError::InvalidObservations(format!(
                "label domain {labels:?} does not match training labels {:?}",
                model.labels
            )));
        }
        model.transform = transform;
        model.metadata = metadata;
        Ok(model)
    }

    /// Copies device, precision and target from the dataset the model was fitted on.
    pub fn with_source(mut self, set: &ObservationSet) -> Self {
        self.metadata.device = set.device().to_string();
        self.metadata.precision = set.precision();
        self.metadata.target = set.kind().into();
        self
    }

    pub fn with_metadata(mut self, metadata: ModelMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn transform(&self) -> FeatureTransform {
        self.transform
    }

    pub fn metadata(&self) -> &ModelMetadata {
        &self.metadata
    }

    /// The `k` training points closest to `n`, nearest first.
    pub fn neighbors(&self, n: u64) -> Vec<LabeledPoint> {
        let q = self.transform.apply(n);
        let mut ranked: Vec<(f64, LabeledPoint)> = self
            .points
            .iter()
            .map(|p| ((self.transform.apply(p.n) - q).abs(), *p))
            .collect();
        ranked.sort_by(|(da, pa), (db, pb)| da.total_cmp(db).then(pa.cmp(pb)));
        ranked.into_iter().take(self.k).map(|(_, p)| p).collect()
    }

    pub fn predict(&self, n: u64) -> u32 {
        mode_label(self.neighbors(n).into_iter().map(|p| p.label)).expect("model has at least k >= 1 points")
    }
}
