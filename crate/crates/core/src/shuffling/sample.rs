use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use super::grid::{AztecWeightGrid, Edge};
use super::levels::{Reduction, RhoTable};
use crate::Result;

/// Bumped whenever the sequence of random draws for a given seed changes.
pub const SAMPLER_VERSION: u32 = 1;

/// A perfect matching of the Aztec diamond, stored as an edge bitmask per
/// cell (see [`Edge::bit`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingSample {
    pub order: usize,
    pub cells: Vec<u8>,
    pub seed: u64,
    pub sampler_version: u32,
}

impl TilingSample {
    pub fn mask(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.order + j]
    }

    pub fn has(&self, i: usize, j: usize, e: Edge) -> bool {
        self.mask(i, j) & e.bit() != 0
    }

    pub fn domino_count(&self) -> usize {
        self.cells.iter().map(|c| c.count_ones() as usize).sum()
    }

    /// Squares of the diamond in doubled coordinates covered by each domino,
    /// keyed by square.
    fn coverage(&self) -> BTreeMap<(i64, i64), u32> {
        let n = self.order as i64;
        let mut cover = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (2 * (i + j - (n - 1)), 2 * (i - j));
                let (ne, nw, sw, se) = ((x + 1, y + 1), (x - 1, y + 1), (x - 1, y - 1), (x + 1, y - 1));
                let m = self.mask(i as usize, j as usize);
                for (e, pair) in [(Edge::N, [nw, ne]), (Edge::S, [sw, se]), (Edge::W, [nw, sw]), (Edge::E, [ne, se])] {
                    if m & e.bit() != 0 {
                        for sq in pair {
                            *cover.entry(sq).or_insert(0) += 1;
                        }
                    }
                }
            }
        }
        cover
    }

    /// Every square of the diamond is covered by exactly one domino.
    pub fn is_perfect_matching(&self) -> bool {
        let n = self.order as i64;
        let cover = self.coverage();
        let mut squares = 0usize;
        for a in (-2 * n + 1..2 * n).step_by(2) {
            for b in (-2 * n + 1..2 * n).step_by(2) {
                if a.abs() + b.abs() <= 2 * n {
                    squares += 1;
                    if cover.get(&(a, b)) != Some(&1) {
                        return false;
                    }
                }
            }
        }
        cover.len() == squares
    }
}

struct Sampler {
    rng: ChaCha20Rng,
    cells: Vec<u8>,
}

impl Sampler {
    fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha20Rng::seed_from_u64(seed), cells: Vec::new() }
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One shuffling step from order `m - 1` to order `m`: slide every
    /// domino, drop colliding pairs, and fill the empty cells.
    fn step(&mut self, m: usize, rho: &[f64]) {
        let mut next = vec![0u8; m * m];
        let k = m - 1;
        for a in 0..k {
            for b in 0..k {
                let mask = self.cells[a * k + b];
                for e in Edge::ALL {
                    if mask & e.bit() != 0 {
                        let (di, dj) = e.source_offset();
                        next[(a + di) * m + b + dj] |= e.bit();
                    }
                }
            }
        }
        for (c, cell) in next.iter_mut().enumerate() {
            match cell.count_ones() {
                0 => {
                    *cell = if self.uniform() < rho[c] {
                        Edge::N.bit() | Edge::S.bit()
                    } else {
                        Edge::E.bit() | Edge::W.bit()
                    }
                }
                2 => *cell = 0,
                _ => {}
            }
        }
        self.cells = next;
    }
}

/// One exact sample of the weighted dimer measure.
pub fn sample_tiling(wg: &AztecWeightGrid, seed: u64) -> Result<TilingSample> {
    let red = Reduction::new(wg)?;
    let mut s = Sampler::new(seed);
    red.ascend(|m, rho| s.step(m, rho));
    Ok(TilingSample { order: wg.order(), cells: s.cells, seed, sampler_version: SAMPLER_VERSION })
}

impl RhoTable {
    /// Same draw sequence as [`sample_tiling`] on the grid the table was
    /// built from.
    pub fn sample(&self, seed: u64) -> TilingSample {
        let mut s = Sampler::new(seed);
        for m in 1..=self.order() {
            s.step(m, self.level(m));
        }
        TilingSample { order: self.order(), cells: s.cells, seed, sampler_version: SAMPLER_VERSION }
    }
}
