use alloc::vec::Vec;

use super::grid::{reduce, AztecWeightGrid, CellWeights};
use crate::fmath::sqrt;
use crate::{Error, Result};

/// Largest order for which [`RhoTable`] keeps every level in memory.
pub const MAX_RHO_TABLE_ORDER: usize = 256;

/// Downward pass of the shuffling recursion. Weights are kept only at a
/// sparse set of checkpoint orders and recomputed on the way up, so the
/// memory footprint is `O(n^2 sqrt n)` instead of `O(n^3)`.
pub(crate) struct Reduction {
    checkpoints: Vec<(usize, Vec<CellWeights>)>,
    stride: usize,
    pub ln_z: f64,
}

impl Reduction {
    pub fn new(wg: &AztecWeightGrid) -> Result<Self> {
        let n = wg.order();
        let stride = (sqrt(n as f64) as usize).max(1);
        let mut checkpoints = Vec::new();
        let mut cells = wg.cells().to_vec();
        let mut order = 0i64;
        let mut ln_z = 0.0;
        for m in (1..=n).rev() {
            if (n - m).is_multiple_of(stride) {
                checkpoints.push((m, cells.clone()));
            }
            let red = reduce(&cells, m);
            order += red.delta_order;
            ln_z += red.ln_factor;
            cells = red.cells;
        }
        if order > 0 {
            return Err(Error::ZeroTotalWeight);
        }
        checkpoints.reverse();
        Ok(Reduction { checkpoints, stride, ln_z })
    }

    /// Calls `f(m, rho_m)` for `m = 1, ..., n` in increasing order, where
    /// `rho_m[i * m + j]` is the probability that a pair created in cell
    /// `(i, j)` at order `m` is `N+S`.
    pub fn ascend(&self, mut f: impl FnMut(usize, &[f64])) {
        let mut seg: Vec<Vec<f64>> = Vec::with_capacity(self.stride);
        for (top, cells) in &self.checkpoints {
            let lo = top.saturating_sub(self.stride - 1).max(1);
            seg.clear();
            let mut cur = cells.clone();
            let mut m = *top;
            loop {
                seg.push(cur.iter().map(CellWeights::rho).collect());
                if m == lo {
                    break;
                }
                cur = reduce(&cur, m).cells;
                m -= 1;
            }
            for (k, rho) in seg.iter().rev().enumerate() {
                f(lo + k, rho);
            }
        }
    }
}

/// Every level of pair probabilities, cached for repeated sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoTable {
    order: usize,
    levels: Vec<Vec<f64>>,
}

impl RhoTable {
    pub fn new(wg: &AztecWeightGrid) -> Result<Self> {
        let n = wg.order();
        if n > MAX_RHO_TABLE_ORDER {
            return Err(Error::SizeGuard { what: "order", limit: MAX_RHO_TABLE_ORDER, got: n });
        }
        let red = Reduction::new(wg)?;
        let mut levels = Vec::with_capacity(n);
        red.ascend(|_, rho| levels.push(rho.to_vec()));
        Ok(RhoTable { order: n, levels })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Pair probabilities at order `m` (1-based).
    pub fn level(&self, m: usize) -> &[f64] {
        &self.levels[m - 1]
    }
}
