use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{accuracy, fit_knn, AutotuneError, LabeledPoint, Result, DEFAULT_SEED};

/// Folds used by [`grid_search_k`].
pub const DEFAULT_FOLDS: usize = 5;

/// Train/test split parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub test_fraction: f64,
    pub seed: u64,
    /// Keep every label in the training set.
    pub stratified: bool,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self { test_fraction: 0.25, seed: DEFAULT_SEED, stratified: true }
    }
}

impl SplitSpec {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

fn shuffled(len: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Shuffles and takes `round(fraction · len)` rows for testing.
///
/// With stratification a row is skipped when taking it would leave its label
/// without a training example. Both halves come back sorted by `N`.
pub fn split(data: &[LabeledPoint], spec: SplitSpec) -> Result<(Vec<LabeledPoint>, Vec<LabeledPoint>)> {
    if !(spec.test_fraction > 0.0 && spec.test_fraction < 1.0) {
        return Err(AutotuneError::InvalidFraction(spec.test_fraction));
    }
    let n_test = (spec.test_fraction * data.len() as f64).round() as usize;

    let mut remaining: BTreeMap<u32, usize> = BTreeMap::new();
    for p in data {
        *remaining.entry(p.label).or_default() += 1;
    }

    let mut in_test = vec![false; data.len()];
    let mut taken = 0;
    for idx in shuffled(data.len(), spec.seed) {
        if taken == n_test {
            break;
        }
        let left = remaining.get_mut(&data[idx].label).expect("label counted above");
        if spec.stratified && *left <= 1 {
            continue;
        }
        *left -= 1;
        in_test[idx] = true;
        taken += 1;
    }
    if taken < n_test {
        // Only reachable with stratification: every label is down to one row.
        let label = remaining.iter().find(|(_, &c)| c == 1).map(|(&l, _)| l).unwrap_or_default();
        return Err(AutotuneError::LabelTooRare { label });
    }

    let (mut test, mut train): (Vec<_>, Vec<_>) = data
        .iter()
        .zip(&in_test)
        .partition(|(_, &t)| t);
    let unpack = |v: &mut Vec<(&LabeledPoint, &bool)>| {
        let mut out: Vec<LabeledPoint> = v.drain(..).map(|(p, _)| *p).collect();
        out.sort();
        out
    };
    Ok((unpack(&mut train), unpack(&mut test)))
}

/// Outcome of the cross-validated search over `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSearch {
    pub k: usize,
    /// Mean fold accuracy for each `k` tried, in order.
    pub scores: Vec<(usize, f64)>,
}

/// Tries `k = 1 ..= #labels` with `folds`-fold cross-validation and returns the
/// smallest `k` with the best mean accuracy.
///
/// Folds come from one seeded shuffle of the rows, dealt round-robin.
pub fn grid_search_k(data: &[LabeledPoint], folds: usize, seed: u64) -> Result<GridSearch> {
    if folds < 2 || data.len() < folds {
        return Err(AutotuneError::TooFewRows { needed: folds.max(2), have: data.len() });
    }
    let mut fold_of = vec![0; data.len()];
    for (pos, idx) in shuffled(data.len(), seed).into_iter().enumerate() {
        fold_of[idx] = pos % folds;
    }
    let partitions: Vec<(Vec<LabeledPoint>, Vec<LabeledPoint>)> = (0..folds)
        .map(|f| {
            let (test, train): (Vec<_>, Vec<_>) = data.iter().zip(&fold_of).partition(|(_, &g)| g == f);
            (train.into_iter().map(|(p, _)| *p).collect(), test.into_iter().map(|(p, _)| *p).collect())
        })
        .collect();

    let mut labels: Vec<u32> = data.iter().map(|p| p.label).collect();
    labels.sort_unstable();
    labels.dedup();
    let smallest_train = partitions.iter().map(|(t, _)| t.len()).min().unwrap_or(0);
    let k_max = labels.len().min(smallest_train).max(1);

    let mut scores = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut total = 0.0;
        for (train, test) in &partitions {
            total += accuracy(&fit_knn(train, k)?, test)?;
        }
        scores.push((k, total / folds as f64));
    }
    let best = scores.iter().map(|&(_, s)| s).fold(f64::NEG_INFINITY, f64::max);
    let k = scores
        .iter()
        .find(|&&(_, s)| s >= best - 1e-12)
        .map(|&(k, _)| k)
        .expect("at least one k was scored");
    Ok(GridSearch { k, scores })
}
