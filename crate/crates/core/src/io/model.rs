use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_text, write_text, DataError, Result};
use crate::autotune::{FeatureTransform, HeuristicModel, LabeledPoint, ModelMetadata};

pub const MODEL_FORMAT_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Pair {
    n: u64,
    label: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDocument {
    version: u64,
    transform: FeatureTransform,
    k: usize,
    pairs: Vec<Pair>,
    labels: Vec<u32>,
    metadata: ModelMetadata,
}

pub fn model_to_json(model: &HeuristicModel) -> String {
    let doc = ModelDocument {
        version: MODEL_FORMAT_VERSION,
        transform: model.transform(),
        k: model.k(),
        pairs: model.points().iter().map(|p| Pair { n: p.n, label: p.label }).collect(),
        labels: model.labels().to_vec(),
        metadata: model.metadata().clone(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("model document serializes");
    text.push('\n');
    text
}

pub fn model_from_json(text: &str) -> Result<HeuristicModel> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| DataError::Schema(e.to_string()))?;
    match value.get("version").and_then(serde_json::Value::as_u64) {
        Some(MODEL_FORMAT_VERSION) => {}
        Some(found) => return Err(DataError::VersionMismatch { found }),
        None => return Err(DataError::Schema("missing or non-integer `version`".into())),
    }
    let doc: ModelDocument = serde_json::from_value(value).map_err(|e| DataError::Schema(e.to_string()))?;
    let points = doc.pairs.into_iter().map(|p| LabeledPoint { n: p.n, label: p.label }).collect();
    HeuristicModel::from_parts(doc.k, points, doc.labels, doc.transform, doc.metadata)
        .map_err(|e| DataError::Schema(e.to_string()))
}

pub fn save_model(model: &HeuristicModel, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &model_to_json(model))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<HeuristicModel> {
    model_from_json(&read_text(path.as_ref())?)
}
