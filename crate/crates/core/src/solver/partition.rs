use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    assemble_interface, back_substitute, make_plan, reduce_block, thomas_solve, ReducedBlock,
    Result, SolverError, TridiagonalSystem,
};
use crate::Scalar;

/// Sub-system sizes `[m_0, …, m_R]`, one per partition level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionPolicy {
    sizes: Vec<usize>,
}

impl RecursionPolicy {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(SolverError::InvalidPolicy("at least one level is required".into()));
        }
        if let Some(&m) = sizes.iter().find(|&&m| m < 2) {
            return Err(SolverError::InvalidPolicy(format!("sub-system size {m} < 2")));
        }
        Ok(Self { sizes })
    }

    /// Non-recursive method with sub-system size `m`.
    pub fn flat(m: usize) -> Result<Self> {
        Self::new(vec![m])
    }

    /// `depth + 1` levels, all with size `m`.
    pub fn uniform(m: usize, depth: usize) -> Result<Self> {
        Self::new(vec![m; depth + 1])
    }

    pub fn depth(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
}

/// Blocks per rayon task; keeps scheduling overhead small for tiny blocks.
const MIN_BLOCKS_PER_TASK: usize = 64;

/// Solves `system` with the (recursive) partition method.
///
/// A level whose system has fewer than 4 rows, or fewer than `2 m` rows,
/// is solved directly with [`thomas_solve`].
pub fn solve_partition<T: Scalar>(system: &TridiagonalSystem<T>, policy: &RecursionPolicy) -> Result<Vec<T>> {
    solve_level(system, policy.sizes(), 0, &mut |_, _| {})
}

/// Like [`solve_partition`], calling `observer(level, interface)` for every
/// interface system assembled along the way.
pub fn solve_partition_observed<T, F>(system: &TridiagonalSystem<T>, policy: &RecursionPolicy, mut observer: F) -> Result<Vec<T>>
where
    T: Scalar,
    F: FnMut(usize, &TridiagonalSystem<T>),
{
    solve_level(system, policy.sizes(), 0, &mut observer)
}

fn solve_level<T: Scalar>(
    system: &TridiagonalSystem<T>,
    sizes: &[usize],
    level: usize,
    observer: &mut dyn FnMut(usize, &TridiagonalSystem<T>),
) -> Result<Vec<T>> {
    let n = system.len();
    let m = match sizes.first() {
        Some(&m) if n >= 4 && n >= 2 * m => m,
        _ => return thomas_solve(system),
    };

    let plan = make_plan(n, m)?;
    let blocks: Vec<ReducedBlock<T>> = plan
        .blocks
        .par_iter()
        .with_min_len(MIN_BLOCKS_PER_TASK)
        .map(|b| reduce_block(system, b.clone()))
        .collect::<Result<_>>()?;

    let interface = assemble_interface(&blocks)?;
    observer(level, &interface);
    let boundary = solve_level(&interface, &sizes[1..], level + 1, observer)?;

    let mut x = vec![T::zero(); n];
    let mut slices = Vec::with_capacity(blocks.len());
    let mut rest = x.as_mut_slice();
    for block in &blocks {
        let (head, tail) = rest.split_at_mut(block.len());
        slices.push(head);
        rest = tail;
    }
    slices
        .into_par_iter()
        .with_min_len(MIN_BLOCKS_PER_TASK)
        .zip(blocks.par_iter())
        .enumerate()
        .try_for_each(|(j, (out, block))| {
            let (xs, xe) = (boundary[2 * j], boundary[2 * j + 1]);
            let interior = back_substitute(block, xs, xe)?;
            let last = out.len() - 1;
            out[0] = xs;
            out[last] = xe;
            out[1..last].copy_from_slice(&interior);
            Ok(())
        })?;
    Ok(x)
}
