use std::collections::BTreeMap;

use serde::Serialize;

use super::{BenchError, Clock, Result};
use crate::autotune::{recursion_sizes, DatasetKind, HeuristicModel, ObservationRow, ObservationSet};
use crate::solver::{residual_inf, solve_partition, RecursionPolicy, TridiagonalSystem};
use crate::{Precision, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimingStats {
    pub median_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
    pub runs: usize,
}

impl TimingStats {
    fn from_samples(mut samples: Vec<f64>) -> Self {
        samples.sort_by(f64::total_cmp);
        let runs = samples.len();
        let median_ms = if runs % 2 == 1 {
            samples[runs / 2]
        } else {
            0.5 * (samples[runs / 2 - 1] + samples[runs / 2])
        };
        Self { median_ms, min_ms: samples[0], max_ms: samples[runs - 1], runs }
    }
}

fn checked_solve<T: Scalar>(system: &TridiagonalSystem<T>, policy: &RecursionPolicy) -> Result<()> {
    let x = solve_partition(system, policy).map_err(|e| BenchError::SolveFailed(e.to_string()))?;
    let scale = system.rhs().iter().fold(1.0_f64, |acc, d| acc.max(d.as_f64().abs()));
    let r = residual_inf(system, &x);
    if !(r <= T::RESIDUAL_GATE * scale) {
        return Err(BenchError::SolveFailed(format!(
            "residual {r:e} exceeds {:e} with sizes {:?}",
            T::RESIDUAL_GATE * scale,
            policy.sizes()
        )));
    }
    Ok(())
}

/// One untimed warm-up solve, then `runs` timed solves; every result is residual-checked.
pub fn time_solve<T: Scalar>(
    system: &TridiagonalSystem<T>,
    policy: &RecursionPolicy,
    runs: usize,
    clock: &mut dyn Clock,
) -> Result<TimingStats> {
    if runs == 0 {
        return Err(BenchError::NoRuns);
    }
    checked_solve(system, policy)?;
    let mut samples = Vec::with_capacity(runs);
    for _ in 0..runs {
        let mut outcome = Ok(());
        let t = clock.time(&mut || outcome = checked_solve(system, policy));
        outcome?;
        samples.push(t);
    }
    Ok(TimingStats::from_samples(samples))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    /// `m` for a size sweep, `R` for a depth sweep.
    pub candidate: u32,
    pub sizes: Vec<usize>,
    pub stats: TimingStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub n: u64,
    pub kind: DatasetKind,
    pub entries: Vec<SweepEntry>,
    /// Candidate with the smallest median; ties go to the smaller candidate.
    pub argmin: u32,
    pub runs: usize,
    pub clock_id: String,
}

impl SweepResult {
    fn new(n: usize, kind: DatasetKind, entries: Vec<SweepEntry>, runs: usize, clock: &dyn Clock) -> Self {
        let best = entries
            .iter()
            .min_by(|a, b| a.stats.median_ms.total_cmp(&b.stats.median_ms).then(a.candidate.cmp(&b.candidate)))
            .expect("sweeps have candidates");
        Self { n: n as u64, kind, argmin: best.candidate, entries, runs, clock_id: clock.id() }
    }

    pub fn median_times(&self) -> BTreeMap<u32, f64> {
        self.entries.iter().map(|e| (e.candidate, e.stats.median_ms)).collect()
    }

    pub fn to_row(&self) -> ObservationRow {
        ObservationRow::new(self.n, self.argmin).with_times(self.median_times())
    }
}

/// Times a flat partition solve for each distinct `m`.
pub fn sweep_m<T: Scalar>(
    system: &TridiagonalSystem<T>,
    candidates: &[u32],
    runs: usize,
    clock: &mut dyn Clock,
) -> Result<SweepResult> {
    let mut ms = candidates.to_vec();
    ms.sort_unstable();
    ms.dedup();
    if ms.is_empty() {
        return Err(BenchError::NoCandidates);
    }
    let entries = ms
        .into_iter()
        .map(|m| {
            let policy = RecursionPolicy::flat(m as usize)?;
            let stats = time_solve(system, &policy, runs, clock)?;
            Ok(SweepEntry { candidate: m, sizes: policy.sizes().to_vec(), stats })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::new(system.len(), DatasetKind::SubsystemSize, entries, runs, clock))
}

/// Times depths `0..=max_r`, taking per-level sizes from `size_model`.
pub fn sweep_r<T: Scalar>(
    system: &TridiagonalSystem<T>,
    max_r: usize,
    size_model: &HeuristicModel,
    runs: usize,
    clock: &mut dyn Clock,
) -> Result<SweepResult> {
    let n = system.len();
    let entries = (0..=max_r)
        .map(|r| {
            let policy = recursion_sizes(n as u64, r, size_model)?;
            let stats = time_solve(system, &policy, runs, clock)?;
            Ok(SweepEntry { candidate: r as u32, sizes: policy.sizes().to_vec(), stats })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::new(n, DatasetKind::RecursionDepth, entries, runs, clock))
}

/// Collects sweeps of one kind into a dataset.
pub fn observation_set(
    results: &[SweepResult],
    kind: DatasetKind,
    precision: Precision,
    device: &str,
) -> Result<ObservationSet> {
    if let Some(bad) = results.iter().find(|r| r.kind != kind) {
        return Err(crate::autotune::AutotuneError::WrongKind { expected: kind, found: bad.kind }.into());
    }
    Ok(ObservationSet::new(kind, precision, device, results.iter().map(SweepResult::to_row).collect())?)
}
