use super::{Result, SolverError, TridiagonalSystem, ZERO_PIVOT};
use crate::Scalar;

/// Sequential tridiagonal elimination without pivoting.
pub fn thomas_solve<T: Scalar>(system: &TridiagonalSystem<T>) -> Result<Vec<T>> {
    let n = system.len();
    let (a, b, c, d) = (system.sub(), system.diag(), system.sup(), system.rhs());
    let tiny = T::cast_from(ZERO_PIVOT);

    let mut c_prime = vec![T::zero(); n];
    let mut d_prime = vec![T::zero(); n];

    if b[0].abs() < tiny {
        return Err(SolverError::ZeroPivot { row: 0 });
    }
    c_prime[0] = c[0] / b[0];
    d_prime[0] = d[0] / b[0];

    for i in 1..n {
        let pivot = b[i] - a[i] * c_prime[i - 1];
        if pivot.abs() < tiny {
            return Err(SolverError::ZeroPivot { row: i });
        }
        c_prime[i] = c[i] / pivot;
        d_prime[i] = (d[i] - a[i] * d_prime[i - 1]) / pivot;
    }

    let mut x = d_prime;
    for i in (0..n - 1).rev() {
        x[i] = x[i] - c_prime[i] * x[i + 1];
    }
    Ok(x)
}
