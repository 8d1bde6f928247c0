#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::Rng;
use tripart::autotune::{DatasetKind, ObservationRow, ObservationSet};
use tripart::solver::TridiagonalSystem;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Dense Gaussian elimination with partial pivoting.
pub fn dense_solve(sys: &TridiagonalSystem<f64>) -> Vec<f64> {
    let n = sys.len();
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        let (l, d, u, r) = sys.row(i);
        if i > 0 {
            a[i][i - 1] = l;
        }
        a[i][i] = d;
        if i + 1 < n {
            a[i][i + 1] = u;
        }
        a[i][n] = r;
    }
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            if f == 0.0 {
                continue;
            }
            for k in c..=n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (a[i][n] - s) / a[i][i];
    }
    x
}

/// Strictly dominant system; `factor > 1` scales the dominance margin.
pub fn random_dominant<R: Rng>(rng: &mut R, n: usize, factor: f64) -> TridiagonalSystem<f64> {
    let sub: Vec<f64> = (0..n).map(|i| if i == 0 { 0.0 } else { rng.gen_range(-1.0..=1.0) }).collect();
    let sup: Vec<f64> = (0..n).map(|i| if i + 1 == n { 0.0 } else { rng.gen_range(-1.0..=1.0) }).collect();
    let diag = (0..n)
        .map(|i| {
            let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            s * (factor * (sub[i].abs() + sup[i].abs()) + rng.gen_range(0.01..1.0))
        })
        .collect();
    let rhs = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    TridiagonalSystem::new(sub, diag, sup, rhs).unwrap()
}

pub fn rel_inf_diff(x: &[f64], y: &[f64]) -> f64 {
    let scale = y.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    x.iter().zip(y).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())) / scale
}

/// Leave-one-out accuracy of a k-NN vote on `log10(N)`, by exhaustive search.
/// Distance ties go to the smaller N, vote ties to the smaller label.
pub fn loo_accuracy(data: &[(u64, u32)], k: usize) -> (usize, usize) {
    let mut hits = 0;
    for (i, &(q, truth)) in data.iter().enumerate() {
        let mut others: Vec<(f64, u64, u32)> = data
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &(n, l))| (((n as f64).log10() - (q as f64).log10()).abs(), n, l))
            .collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut votes: BTreeMap<u32, usize> = BTreeMap::new();
        for &(_, _, l) in &others[..k] {
            *votes.entry(l).or_default() += 1;
        }
        let best = votes.values().copied().max().unwrap();
        let guess = votes.iter().find(|(_, &c)| c == best).map(|(&l, _)| l).unwrap();
        if guess == truth {
            hits += 1;
        }
    }
    (hits, data.len())
}

/// Fixture timings with every other candidate padded to 10% above the fastest.
pub fn padded_size_set(set: &ObservationSet) -> ObservationSet {
    let domain: Vec<u32> = set
        .rows()
        .iter()
        .flat_map(|r| [Some(r.label), r.corrected_label])
        .flatten()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows = set
        .rows()
        .iter()
        .map(|r| {
            let mut times = r.times.clone().expect("timed fixture");
            let fastest = times.values().copied().fold(f64::INFINITY, f64::min);
            for &m in &domain {
                times.entry(m).or_insert(1.1 * fastest);
            }
            let mut row = ObservationRow::new(r.n, r.label).with_times(times);
            row.corrected_label = r.corrected_label;
            row.streams = r.streams;
            row
        })
        .collect();
    ObservationSet::new(DatasetKind::SubsystemSize, set.precision(), set.device(), rows).unwrap()
}

/// Dominant by a relative margin of only `eps` in every row.
pub fn random_tight<R: Rng>(rng: &mut R, n: usize, eps: f64) -> TridiagonalSystem<f64> {
    let off = |edge: bool, rng: &mut R| {
        if edge {
            0.0
        } else {
            let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            s * rng.gen_range(0.5..=1.0)
        }
    };
    let sub: Vec<f64> = (0..n).map(|i| off(i == 0, rng)).collect();
    let sup: Vec<f64> = (0..n).map(|i| off(i + 1 == n, rng)).collect();
    let diag = (0..n)
        .map(|i| {
            let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            s * (sub[i].abs() + sup[i].abs()) * (1.0 + eps)
        })
        .collect();
    let rhs = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    TridiagonalSystem::new(sub, diag, sup, rhs).unwrap()
}
