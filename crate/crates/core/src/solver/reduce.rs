use std::ops::Range;

use super::{Result, SolverError, TridiagonalSystem, ZERO_PIVOT};
use crate::Scalar;

/// `lower · x_prev + diag · x_self + upper · x_next = rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceEquation<T> {
    pub lower: T,
    pub diag: T,
    pub upper: T,
    pub rhs: T,
}

/// Interior row after the upward sweep:
/// `sub · x_{i-1} + pivot · x_i + coupling · x_e = rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorRow<T> {
    pub sub: T,
    pub pivot: T,
    pub coupling: T,
    pub rhs: T,
}

/// Stage-1 output for the block `start..end`.
///
/// `first` couples `x_{s-1}, x_s, x_e` and `last` couples `x_s, x_e, x_{e+1}`,
/// where `s = start` and `e = end - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedBlock<T> {
    pub start: usize,
    pub end: usize,
    pub first: InterfaceEquation<T>,
    pub last: InterfaceEquation<T>,
    pub interior: Vec<InteriorRow<T>>,
}

impl<T> ReducedBlock<T> {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

fn check_pivot<T: Scalar>(pivot: T, row: usize) -> Result<()> {
    if pivot.abs() < T::cast_from(ZERO_PIVOT) {
        Err(SolverError::ZeroPivot { row })
    } else {
        Ok(())
    }
}

/// Eliminates the interior unknowns of one block.
///
/// An upward sweep from row `e-1` to `s` removes each `x_{i+1}` in favour of
/// `x_e` and yields the first interface equation plus the interior rows used
/// by [`back_substitute`]. A downward sweep from `s+1` to `e` removes each
/// `x_{i-1}` in favour of `x_s` and yields the second one.
pub fn reduce_block<T: Scalar>(system: &TridiagonalSystem<T>, block: Range<usize>) -> Result<ReducedBlock<T>> {
    if block.end > system.len() || block.len() < 2 {
        return Err(SolverError::InvalidSize(format!(
            "block {}..{} is not a range of at least two rows of a size-{} system",
            block.start,
            block.end,
            system.len()
        )));
    }
    let (a, b, c, d) = (system.sub(), system.diag(), system.sup(), system.rhs());
    let s = block.start;
    let e = block.end - 1;

    // Upward sweep over rows e-1 ..= s; index k holds row s + k.
    let len = e - s;
    let mut beta = vec![T::zero(); len];
    let mut gamma = vec![T::zero(); len];
    let mut delta = vec![T::zero(); len];
    beta[len - 1] = b[e - 1];
    gamma[len - 1] = c[e - 1];
    delta[len - 1] = d[e - 1];
    for i in (s..e - 1).rev() {
        let k = i - s;
        check_pivot(beta[k + 1], i + 1)?;
        let w = c[i] / beta[k + 1];
        beta[k] = b[i] - w * a[i + 1];
        gamma[k] = -w * gamma[k + 1];
        delta[k] = d[i] - w * delta[k + 1];
    }
    let first = InterfaceEquation { lower: a[s], diag: beta[0], upper: gamma[0], rhs: delta[0] };
    let interior = (1..len)
        .map(|k| InteriorRow { sub: a[s + k], pivot: beta[k], coupling: gamma[k], rhs: delta[k] })
        .collect();

    // Downward sweep over rows s+1 ..= e.
    let (mut phi, mut piv, mut rhs) = (a[s + 1], b[s + 1], d[s + 1]);
    for i in s + 2..=e {
        check_pivot(piv, i - 1)?;
        let w = a[i] / piv;
        piv = b[i] - w * c[i - 1];
        phi = -w * phi;
        rhs = d[i] - w * rhs;
    }
    let last = InterfaceEquation { lower: phi, diag: piv, upper: c[e], rhs };

    Ok(ReducedBlock { start: s, end: block.end, first, last, interior })
}

/// Builds the size-`2K` interface system in unknowns `x_{s_1}, x_{e_1}, …, x_{s_K}, x_{e_K}`.
pub fn assemble_interface<T: Scalar>(blocks: &[ReducedBlock<T>]) -> Result<TridiagonalSystem<T>> {
    if blocks.is_empty() {
        return Err(SolverError::InvalidSize("no blocks to assemble".into()));
    }
    let size = 2 * blocks.len();
    let mut sub = Vec::with_capacity(size);
    let mut diag = Vec::with_capacity(size);
    let mut sup = Vec::with_capacity(size);
    let mut rhs = Vec::with_capacity(size);
    for block in blocks {
        for eq in [&block.first, &block.last] {
            sub.push(eq.lower);
            diag.push(eq.diag);
            sup.push(eq.upper);
            rhs.push(eq.rhs);
        }
    }
    TridiagonalSystem::new(sub, diag, sup, rhs)
}

/// Recovers `x_{s+1} ..= x_{e-1}` once both boundary values are known.
pub fn back_substitute<T: Scalar>(block: &ReducedBlock<T>, x_start: T, x_end: T) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(block.interior.len());
    let mut prev = x_start;
    for (k, row) in block.interior.iter().enumerate() {
        check_pivot(row.pivot, block.start + 1 + k)?;
        let x = (row.rhs - row.sub * prev - row.coupling * x_end) / row.pivot;
        out.push(x);
        prev = x;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::solver::{dense, make_plan};

    fn eval(eq: &InterfaceEquation<f64>, prev: f64, own: f64, next: f64) -> f64 {
        eq.lower * prev + eq.diag * own + eq.upper * next - eq.rhs
    }

    #[test]
    fn identity_block() {
        let d: Vec<f64> = (0..8).map(|i| i as f64 + 0.5).collect();
        let sys = TridiagonalSystem::identity(d.clone()).unwrap();
        let blk = reduce_block(&sys, 2..6).unwrap();
        assert_eq!(blk.first, InterfaceEquation { lower: 0.0, diag: 1.0, upper: 0.0, rhs: d[2] });
        assert_eq!(blk.last, InterfaceEquation { lower: 0.0, diag: 1.0, upper: 0.0, rhs: d[5] });
        assert!(blk.interior.iter().all(|r| r.coupling == 0.0));
        assert_eq!(back_substitute(&blk, d[2], d[5]).unwrap(), vec![d[3], d[4]]);
    }

    #[test]
    fn two_row_block_keeps_rows_verbatim() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sys = dense::random_dominant(&mut rng, 6, 1.5);
        let blk = reduce_block(&sys, 2..4).unwrap();
        let (a2, b2, c2, d2) = sys.row(2);
        let (a3, b3, c3, d3) = sys.row(3);
        assert_eq!(blk.first, InterfaceEquation { lower: a2, diag: b2, upper: c2, rhs: d2 });
        assert_eq!(blk.last, InterfaceEquation { lower: a3, diag: b3, upper: c3, rhs: d3 });
        assert!(blk.interior.is_empty());
        assert!(back_substitute(&blk, 1.0, 2.0).unwrap().is_empty());
    }

    #[test]
    fn interface_equations_hold_at_true_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 40;
        let sys = dense::random_dominant(&mut rng, n, 1.5);
        let x = dense::solve(&sys);
        for block in make_plan(n, 7).unwrap().blocks {
            let blk = reduce_block(&sys, block.clone()).unwrap();
            let (s, e) = (block.start, block.end - 1);
            let prev = if s > 0 { x[s - 1] } else { 0.0 };
            let next = if e + 1 < n { x[e + 1] } else { 0.0 };
            for (eq, r) in [(&blk.first, eval(&blk.first, prev, x[s], x[e])), (&blk.last, eval(&blk.last, x[s], x[e], next))] {
                let scale = eq.rhs.abs().max(eq.diag.abs()).max(1.0);
                assert!(r.abs() / scale <= 1e-12, "block {block:?}: residual {r}");
            }
            let interior = back_substitute(&blk, x[s], x[e]).unwrap();
            for (k, xi) in interior.iter().enumerate() {
                assert!((xi - x[s + 1 + k]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn boundary_blocks_have_no_outer_coupling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sys = dense::random_dominant(&mut rng, 20, 2.0);
        let plan = make_plan(20, 6).unwrap();
        let blocks: Vec<_> = plan.blocks.iter().map(|b| reduce_block(&sys, b.clone()).unwrap()).collect();
        assert_eq!(blocks[0].first.lower, 0.0);
        assert_eq!(blocks.last().unwrap().last.upper, 0.0);
    }

    #[test]
    fn assembles_two_k_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let sys = dense::random_dominant(&mut rng, 16, 1.5);
        let plan = make_plan(16, 4).unwrap();
        let blocks: Vec<_> = plan.blocks.iter().map(|b| reduce_block(&sys, b.clone()).unwrap()).collect();
        let iface = assemble_interface(&blocks).unwrap();
        assert_eq!(iface.len(), 8);
        assert_eq!(iface.sub()[0], 0.0);
        assert_eq!(iface.sup()[7], 0.0);
        assert_eq!(iface.diag()[2], blocks[1].first.diag);
        assert_eq!(iface.sub()[2], blocks[1].first.lower);
        assert_eq!(iface.sup()[3], blocks[1].last.upper);
        assert!(iface.dominance_margin() >= -1e-12);

        let whole = reduce_block(&sys, 0..16).unwrap();
        let single = assemble_interface(std::slice::from_ref(&whole)).unwrap();
        assert_eq!(single.len(), 2);
        assert_eq!(single.row(0), (whole.first.lower, whole.first.diag, whole.first.upper, whole.first.rhs));
        // A lone inner block still couples outwards, which is not a closed system.
        assert!(assemble_interface(&blocks[..1]).is_err());
        assert!(assemble_interface::<f64>(&[]).is_err());
    }

    #[test]
    fn degenerate_block_reports_zero_pivot() {
        // Row 1 has b = 0, used as the divisor when eliminating it from row 0.
        let sys = TridiagonalSystem::new(
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
            vec![1.0, 1.0, 1.0],
        )
        .unwrap();
        assert_eq!(reduce_block(&sys, 0..3), Err(SolverError::ZeroPivot { row: 1 }));
    }

    #[test]
    fn rejects_short_blocks() {
        let sys = TridiagonalSystem::identity(vec![1.0; 4]).unwrap();
        assert!(reduce_block(&sys, 1..2).is_err());
        assert!(reduce_block(&sys, 2..6).is_err());
    }
}
