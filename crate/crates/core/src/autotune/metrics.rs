use super::{mode_label, AutotuneError, HeuristicModel, LabeledPoint, Result};

/// One test row and what the model made of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictionRecord {
    pub n: u64,
    pub truth: u32,
    pub predicted: u32,
}

impl PredictionRecord {
    pub fn correct(&self) -> bool {
        self.truth == self.predicted
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub null_accuracy: f64,
    pub records: Vec<PredictionRecord>,
}

impl MetricsReport {
    pub fn misses(&self) -> impl Iterator<Item = &PredictionRecord> {
        self.records.iter().filter(|r| !r.correct())
    }
}

/// Fraction of `test` rows whose label the model predicts.
pub fn accuracy(model: &HeuristicModel, test: &[LabeledPoint]) -> Result<f64> {
    if test.is_empty() {
        return Err(AutotuneError::EmptyTestSet);
    }
    let hits = test.iter().filter(|p| model.predict(p.n) == p.label).count();
    Ok(hits as f64 / test.len() as f64)
}

/// Accuracy of always answering the most frequent training label.
pub fn null_accuracy(train: &[LabeledPoint], test: &[LabeledPoint]) -> Result<f64> {
    let modal = mode_label(train.iter().map(|p| p.label)).ok_or(AutotuneError::EmptyTrainingSet)?;
    if test.is_empty() {
        return Err(AutotuneError::EmptyTestSet);
    }
    Ok(test.iter().filter(|p| p.label == modal).count() as f64 / test.len() as f64)
}

/// Accuracy, null accuracy and per-row predictions for a held-out set.
pub fn evaluate(model: &HeuristicModel, train: &[LabeledPoint], test: &[LabeledPoint]) -> Result<MetricsReport> {
    let records = test
        .iter()
        .map(|p| PredictionRecord { n: p.n, truth: p.label, predicted: model.predict(p.n) })
        .collect();
    Ok(MetricsReport { accuracy: accuracy(model, test)?, null_accuracy: null_accuracy(train, test)?, records })
}
