use super::{fit_knn, AutotuneError, DatasetKind, HeuristicModel, LabelSource, ObservationSet, Result};
use crate::solver::{make_plan, RecursionPolicy};

/// Deepest recursion the autotuner will propose.
pub const MAX_DEPTH: usize = 4;

/// Second-level size used whenever `R >= 2`.
pub const FIXED_SECOND_LEVEL_SIZE: usize = 10;

/// 1-NN model for the optimum recursion depth.
pub fn fit_depth_model(data: &ObservationSet) -> Result<HeuristicModel> {
    if data.kind() != DatasetKind::RecursionDepth {
        return Err(AutotuneError::WrongKind { expected: DatasetKind::RecursionDepth, found: data.kind() });
    }
    Ok(fit_knn(&data.points(LabelSource::Observed)?, 1)?.with_source(data))
}

/// Per-level sub-system sizes for a depth-`depth` solve of an `n`-row system.
///
/// Level 0 uses the size model's prediction for `n`. Each following level
/// works on the interface system of the previous one, of size `2K`. Level 1
/// is predicted too when it is the last level, otherwise it is fixed to
/// [`FIXED_SECOND_LEVEL_SIZE`].
pub fn recursion_sizes(n: u64, depth: usize, size_model: &HeuristicModel) -> Result<RecursionPolicy> {
    if depth > MAX_DEPTH {
        return Err(AutotuneError::DepthOutOfRange(depth));
    }
    let mut sizes = Vec::with_capacity(depth + 1);
    let mut level_n = n;
    for level in 0..=depth {
        let m = if level == 1 && depth >= 2 {
            FIXED_SECOND_LEVEL_SIZE
        } else {
            size_model.predict(level_n) as usize
        };
        sizes.push(m);
        if level < depth {
            level_n = make_plan(level_n as usize, m)?.interface_len() as u64;
        }
    }
    Ok(RecursionPolicy::new(sizes)?)
}
