use std::ops::Range;

use super::{Result, SolverError};

/// Contiguous split of `0..n` into blocks of `m` rows.
///
/// Every block except the last has exactly `m` rows; the last has between
/// 2 and `m + 1` rows. A single leftover row is folded into the last block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    pub n: usize,
    pub m: usize,
    pub blocks: Vec<Range<usize>>,
}

impl PartitionPlan {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Size of the interface system this plan produces.
    pub fn interface_len(&self) -> usize {
        2 * self.blocks.len()
    }
}

pub fn make_plan(n: usize, m: usize) -> Result<PartitionPlan> {
    if n < 2 {
        return Err(SolverError::InvalidSize(format!("system size {n} < 2")));
    }
    if m < 2 {
        return Err(SolverError::InvalidSize(format!("sub-system size {m} < 2")));
    }
    if m >= n {
        return Ok(PartitionPlan { n, m, blocks: vec![0..n] });
    }

    let full = n / m;
    let rem = n % m;
    let mut blocks: Vec<Range<usize>> = (0..full).map(|k| k * m..(k + 1) * m).collect();
    match rem {
        0 => {}
        1 => blocks.last_mut().expect("m < n gives at least one block").end = n,
        _ => blocks.push(full * m..n),
    }
    Ok(PartitionPlan { n, m, blocks })
}
