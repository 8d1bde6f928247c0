use super::{AutotuneError, ObservationSet, Result};

/// Default relative slack over the fastest time, 4%.
pub const DEFAULT_TOLERANCE: f64 = 0.04;

/// `(runs, decreases)`; compared lexicographically.
type Cost = (usize, usize);

fn step(from: u32, to: u32) -> Cost {
    if from == to {
        (0, 0)
    } else {
        (1, usize::from(to < from))
    }
}

fn add(a: Cost, b: Cost) -> Cost {
    (a.0 + b.0, a.1 + b.1)
}

/// Candidates within `(1 + tolerance)` of each row's fastest time, ascending.
pub(crate) fn candidate_sets(set: &ObservationSet, tolerance: f64) -> Result<Vec<Vec<u32>>> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(AutotuneError::InvalidTolerance(tolerance));
    }
    set.rows()
        .iter()
        .map(|row| {
            let times = row.times.as_ref().filter(|t| !t.is_empty()).ok_or(AutotuneError::MissingTimes { n: row.n })?;
            let best = times.values().copied().fold(f64::INFINITY, f64::min);
            let limit = (1.0 + tolerance) * best;
            Ok(times.iter().filter(|(_, &t)| t <= limit).map(|(&m, _)| m).collect())
        })
        .collect()
}

/// Replaces noisy per-row optima with a step function over `N`.
///
/// Each row may take any candidate within `tolerance` of its fastest time.
/// Among such labellings the one with the fewest runs of equal labels wins;
/// remaining ties prefer fewer downward steps, then smaller labels in
/// earlier rows.
pub fn plateau_correct(set: &ObservationSet, tolerance: f64) -> Result<Vec<u32>> {
    let cands = candidate_sets(set, tolerance)?;
    let rows = cands.len();
    if rows == 0 {
        return Ok(Vec::new());
    }

    // suffix[i][j]: best cost of rows i+1.. given row i takes cands[i][j].
    let mut suffix: Vec<Vec<Cost>> = vec![Vec::new(); rows];
    suffix[rows - 1] = vec![(0, 0); cands[rows - 1].len()];
    for i in (0..rows - 1).rev() {
        suffix[i] = cands[i]
            .iter()
            .map(|&l| {
                cands[i + 1]
                    .iter()
                    .zip(&suffix[i + 1])
                    .map(|(&next, &c)| add(c, step(l, next)))
                    .min()
                    .expect("candidate sets are never empty")
            })
            .collect();
    }

    // Forward pass: smallest label that stays on an optimal path.
    let mut out = Vec::with_capacity(rows);
    let best = *suffix[0].iter().min().expect("candidate sets are never empty");
    let first = suffix[0].iter().position(|&c| c == best).expect("minimum exists");
    let mut label = cands[0][first];
    let mut remaining = best;
    out.push(label);
    for i in 1..rows {
        let j = cands[i]
            .iter()
            .zip(&suffix[i])
            .position(|(&next, &c)| add(c, step(label, next)) == remaining)
            .expect("an optimal continuation exists");
        remaining = suffix[i][j];
        label = cands[i][j];
        out.push(label);
    }
    Ok(out)
}

/// Runs [`plateau_correct`] and stores the result as the corrected labels.
pub fn apply_plateau_correction(set: &ObservationSet, tolerance: f64) -> Result<ObservationSet> {
    set.with_corrected_labels(&plateau_correct(set, tolerance)?)
}
