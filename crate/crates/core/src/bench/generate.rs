use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BenchError, Result};
use crate::solver::TridiagonalSystem;
use crate::Scalar;

pub const DEFAULT_DOMINANCE: f64 = 2.0;

/// Random strictly diagonally dominant system.
///
/// Off-diagonals and the right-hand side are uniform in `[-1, 1]`; the diagonal
/// is `dominance * (|a| + |c|) + 1`, and each row is negated with probability 1/2.
pub fn generate_system<T: Scalar>(n: usize, seed: u64, dominance: f64) -> Result<TridiagonalSystem<T>> {
    if !(dominance > 1.0) || !dominance.is_finite() {
        return Err(BenchError::WeakDominance(dominance));
    }
    if n < 2 {
        return Err(BenchError::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sub, mut diag, mut sup, mut rhs) =
        (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for i in 0..n {
        let a: f64 = if i == 0 { 0.0 } else { rng.gen_range(-1.0..=1.0) };
        let c: f64 = if i + 1 == n { 0.0 } else { rng.gen_range(-1.0..=1.0) };
        let b = dominance * (a.abs() + c.abs()) + 1.0;
        let s = if rng.gen::<bool>() { -1.0 } else { 1.0 };
        sub.push(T::cast_from(s * a));
        diag.push(T::cast_from(s * b));
        sup.push(T::cast_from(s * c));
        rhs.push(T::cast_from(rng.gen_range(-1.0..=1.0)));
    }
    Ok(TridiagonalSystem::new(sub, diag, sup, rhs)?)
}
