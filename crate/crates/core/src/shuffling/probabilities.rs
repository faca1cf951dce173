use alloc::vec;
use alloc::vec::Vec;

use super::grid::{AztecWeightGrid, Edge};
use super::levels::Reduction;
use crate::Result;

/// Edge-inclusion probabilities per plaquette. With the Aztec cell rotated
/// by 45 degrees, `p`, `q`, `r` and `s` are the NW, NE, SW and SE edges,
/// which are the cell edges `N`, `E`, `W` and `S`. Cell `(i, j)` is stored
/// at `i * order + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaquetteProbabilities {
    pub order: usize,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    /// `ln` of the leading coefficient of the partition function.
    pub ln_z: f64,
}

impl PlaquetteProbabilities {
    pub fn edge(&self, i: usize, j: usize, e: Edge) -> f64 {
        let k = i * self.order + j;
        match e {
            Edge::N => self.p[k],
            Edge::E => self.q[k],
            Edge::W => self.r[k],
            Edge::S => self.s[k],
        }
    }

    /// `[p, q, r, s]` at cell `(i, j)`.
    pub fn quadruple(&self, i: usize, j: usize) -> [f64; 4] {
        let k = i * self.order + j;
        [self.p[k], self.q[k], self.r[k], self.s[k]]
    }

    /// Expected number of dominoes, which equals `order * (order + 1)`.
    pub fn total(&self) -> f64 {
        let mut t = 0.0;
        for k in 0..self.p.len() {
            t += self.p[k] + self.q[k] + self.r[k] + self.s[k];
        }
        t
    }
}

/// Exact edge-inclusion probabilities by the two-pass shuffling recursion.
pub fn edge_probabilities(wg: &AztecWeightGrid) -> Result<PlaquetteProbabilities> {
    let red = Reduction::new(wg)?;
    let mut prev: [Vec<f64>; 4] = Default::default();
    red.ascend(|m, rho| {
        let mut next = [vec![0.0; m * m], vec![0.0; m * m], vec![0.0; m * m], vec![0.0; m * m]];
        for i in 0..m {
            for j in 0..m {
                let mut inner = [0.0; 4];
                for (x, e) in Edge::ALL.iter().enumerate() {
                    let (di, dj) = e.source_offset();
                    if i >= di && j >= dj && i - di < m - 1 && j - dj < m - 1 {
                        inner[x] = prev[x][(i - di) * (m - 1) + j - dj];
                    }
                }
                let rest = 1.0 - inner.iter().sum::<f64>();
                let k = i * m + j;
                let ns = rho[k] * rest;
                let ew = (1.0 - rho[k]) * rest;
                next[0][k] = inner[0] + ns;
                next[1][k] = inner[1] + ew;
                next[2][k] = inner[2] + ns;
                next[3][k] = inner[3] + ew;
            }
        }
        prev = next;
    });
    let [n, e, s, w] = prev;
    Ok(PlaquetteProbabilities { order: wg.order(), p: n, q: e, r: w, s, ln_z: red.ln_z })
}
