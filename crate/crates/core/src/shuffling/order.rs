use alloc::vec::Vec;

use super::probabilities::PlaquetteProbabilities;
use crate::curve::{distance_to_branch, CurveBranch};
use crate::fmath::{cbrt, sqrt};

/// Local order parameters derived from edge-inclusion probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderParameterField {
    pub order: usize,
    /// Fraction of dimers on the `p`/`s` diagonal.
    pub x: Vec<f64>,
    /// `sqrt(p) + i sqrt(q) - i sqrt(r) - sqrt(s)` as `[re, im]`.
    pub z: Vec<[f64; 2]>,
    pub fluid: Vec<bool>,
    pub eps: f64,
}

/// `eps = eps_const * N^(-2/3)`; a cell is fluid when `x` lies in
/// `[eps, 1 - eps]`.
pub fn order_parameters(probs: &PlaquetteProbabilities, eps_const: f64) -> OrderParameterField {
    let n = probs.order;
    let eps = eps_const / cbrt((n * n) as f64);
    let len = n * n;
    let mut x = Vec::with_capacity(len);
    let mut z = Vec::with_capacity(len);
    let mut fluid = Vec::with_capacity(len);
    for k in 0..len {
        let (p, q, r, s) = (probs.p[k], probs.q[k], probs.r[k], probs.s[k]);
        let xv = 0.5 * (1.0 + p - q - r + s);
        x.push(xv);
        z.push([sqrt(p.max(0.0)) - sqrt(s.max(0.0)), sqrt(q.max(0.0)) - sqrt(r.max(0.0))]);
        fluid.push(xv >= eps && xv <= 1.0 - eps);
    }
    OrderParameterField { order: n, x, z, fluid, eps }
}

impl OrderParameterField {
    pub fn is_fluid(&self, i: usize, j: usize) -> bool {
        self.fluid[i * self.order + j]
    }

    /// Continuum position `(x, y)` of the centre of cell `(i, j)`.
    pub fn position(&self, i: usize, j: usize) -> (f64, f64) {
        let n = self.order as f64;
        ((j as f64 + 0.5) / n, (i as f64 + 0.5) / n)
    }

    /// Fluid cells with at least one frozen nearest neighbour.
    pub fn mask_boundary(&self) -> Vec<(usize, usize)> {
        let n = self.order;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.is_fluid(i, j) {
                    continue;
                }
                let frozen = |a: usize, b: usize| !self.is_fluid(a, b);
                let edge = (i > 0 && frozen(i - 1, j))
                    || (i + 1 < n && frozen(i + 1, j))
                    || (j > 0 && frozen(i, j - 1))
                    || (j + 1 < n && frozen(i, j + 1));
                if edge {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Largest distance, in lattice spacings, from a mask-boundary cell to
    /// the nearest point of any of the branches.
    pub fn boundary_deviation(&self, branches: &[CurveBranch]) -> f64 {
        let n = self.order as f64;
        self.mask_boundary()
            .into_iter()
            .map(|(i, j)| {
                let (x, y) = self.position(i, j);
                branches.iter().map(|b| distance_to_branch(b, x, y)).fold(f64::INFINITY, f64::min) * n
            })
            .fold(0.0, f64::max)
    }
}
