//! Dense reference solver used as a test oracle.

use rand::Rng;

use super::TridiagonalSystem;

/// Gaussian elimination with partial pivoting on the full `n × n` matrix.
pub(crate) fn solve(system: &TridiagonalSystem<f64>) -> Vec<f64> {
    let n = system.len();
    let mut m = vec![vec![0.0; n + 1]; n];
    for (i, row) in m.iter_mut().enumerate() {
        let (a, b, c, d) = system.row(i);
        if i > 0 {
            row[i - 1] = a;
        }
        row[i] = b;
        if i + 1 < n {
            row[i + 1] = c;
        }
        row[n] = d;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&p, &q| m[p][col].abs().total_cmp(&m[q][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f != 0.0 {
                for k in col..=n {
                    m[r][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

/// Strictly dominant system with off-diagonals in [-1, 1].
pub(crate) fn random_dominant<R: Rng>(rng: &mut R, n: usize, factor: f64) -> TridiagonalSystem<f64> {
    let mut sub: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let mut sup: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    sub[0] = 0.0;
    sup[n - 1] = 0.0;
    let diag = (0..n)
        .map(|i| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * (factor * (sub[i].abs() + sup[i].abs()) + rng.gen_range(0.1..1.0))
        })
        .collect();
    let rhs = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
    TridiagonalSystem::new(sub, diag, sup, rhs).unwrap()
}
