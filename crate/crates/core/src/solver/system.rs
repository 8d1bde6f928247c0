use super::{Result, SolverError};
use crate::Scalar;

/// Tridiagonal system `a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i`.
///
/// `sub[0]` and `sup[n-1]` lie outside the matrix and must be zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem<T = f64> {
    sub: Vec<T>,
    diag: Vec<T>,
    sup: Vec<T>,
    rhs: Vec<T>,
}

impl<T: Scalar> TridiagonalSystem<T> {
    pub fn new(sub: Vec<T>, diag: Vec<T>, sup: Vec<T>, rhs: Vec<T>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(SolverError::InvalidSize("system must have at least one row".into()));
        }
        if sub.len() != n || sup.len() != n || rhs.len() != n {
            return Err(SolverError::Malformed(format!(
                "diagonal lengths differ: sub={}, diag={}, super={}, rhs={}",
                sub.len(),
                n,
                sup.len(),
                rhs.len()
            )));
        }
        if sub[0] != T::zero() {
            return Err(SolverError::Malformed("sub[0] must be zero".into()));
        }
        if sup[n - 1] != T::zero() {
            return Err(SolverError::Malformed("super[n-1] must be zero".into()));
        }
        Ok(Self { sub, diag, sup, rhs })
    }

    /// `I x = d`.
    pub fn identity(rhs: Vec<T>) -> Result<Self> {
        let n = rhs.len();
        Self::new(vec![T::zero(); n], vec![T::one(); n], vec![T::zero(); n], rhs)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn sub(&self) -> &[T] {
        &self.sub
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn sup(&self) -> &[T] {
        &self.sup
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    /// Row `i` as `(a_i, b_i, c_i, d_i)`.
    pub fn row(&self, i: usize) -> (T, T, T, T) {
        (self.sub[i], self.diag[i], self.sup[i], self.rhs[i])
    }

    /// `|b_i| > |a_i| + |c_i|` for every row.
    pub fn is_strictly_dominant(&self) -> bool {
        (0..self.len()).all(|i| self.diag[i].abs() > self.sub[i].abs() + self.sup[i].abs())
    }

    /// Smallest `|b_i| - |a_i| - |c_i|` over all rows.
    pub fn dominance_margin(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                self.diag[i].as_f64().abs() - self.sub[i].as_f64().abs() - self.sup[i].as_f64().abs()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `A x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let n = self.len();
        assert_eq!(x.len(), n, "vector length must match system size");
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v = v + self.sub[i] * x[i - 1];
                }
                if i + 1 < n {
                    v = v + self.sup[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// Same matrix with a different right-hand side.
    pub fn with_rhs(&self, rhs: Vec<T>) -> Result<Self> {
        Self::new(self.sub.clone(), self.diag.clone(), self.sup.clone(), rhs)
    }
}

/// Relative residual `‖Ax − d‖∞ / max(1, ‖d‖∞)`, accumulated in f64.
pub fn residual_inf<T: Scalar>(system: &TridiagonalSystem<T>, x: &[T]) -> f64 {
    let n = system.len();
    assert_eq!(x.len(), n, "solution length must match system size");
    let mut worst = 0.0f64;
    let mut rhs_norm = 0.0f64;
    for i in 0..n {
        let (a, b, c, d) = system.row(i);
        let mut ax = b.as_f64() * x[i].as_f64();
        if i > 0 {
            ax += a.as_f64() * x[i - 1].as_f64();
        }
        if i + 1 < n {
            ax += c.as_f64() * x[i + 1].as_f64();
        }
        worst = worst.max((ax - d.as_f64()).abs());
        rhs_norm = rhs_norm.max(d.as_f64().abs());
    }
    worst / rhs_norm.max(1.0)
}
