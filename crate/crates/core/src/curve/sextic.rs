//! The degree-six implicit form of the arctic curve at `Q = 0`.
//!
//! With `z1 = x - y`, `z2 = 1 - x - y`, `Z1 = z1/sqrt(alpha)`,
//! `Z2 = z2/sqrt(1-alpha)` and `beta = (R-1)/((R+1) sqrt(alpha))`,
//! `A = (1-alpha)^2 alpha^6 sum C[n1][n2] Z1^n1 Z2^n2`.

use alloc::format;

use crate::fmath::{powi, sqrt};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitSexticQ0 {
    pub alpha: f64,
    pub beta: f64,
    /// `coeffs[n1][n2]`; odd `n2` entries are zero.
    pub coeffs: [[f64; 7]; 7],
}

fn table(a: f64, b: f64) -> [[f64; 7]; 7] {
    let p = |x: f64, n: i32| powi(x, n);
    let oma = 1.0 - a;
    let g = 4.0 * oma * oma * b * b + a * p(1.0 - b, 4);
    let mut c = [[0.0; 7]; 7];
    c[6][0] = 64.0 * oma * oma * p(1.0 - 2.0 * a * b + a * b * b, 2);
    c[5][0] = 64.0
        * oma
        * oma
        * (1.0 - (5.0 + 2.0 * a) * b + 18.0 * a * b * b - 2.0 * a * (4.0 + 7.0 * a) * p(b, 3) + 13.0 * a * a * p(b, 4)
            - 3.0 * a * a * p(b, 5));
    c[4][2] = 128.0
        * oma
        * oma
        * (1.0 + (2.0 - 6.0 * a) * b - 2.0 * (1.0 - a - 3.0 * a * a) * b * b
            + 2.0 * (1.0 - 3.0 * a) * a * p(b, 3)
            + a * a * p(b, 4));
    c[4][0] = 16.0
        * oma
        * (1.0 + a - (22.0 - 18.0 * a + 8.0 * a * a) * b + (41.0 + 13.0 * a - 32.0 * a * a + 8.0 * p(a, 3)) * b * b
            - 4.0 * a * (36.0 - 25.0 * a - a * a) * p(b, 3)
            + a * (52.0 + 63.0 * a - 85.0 * a * a) * p(b, 4)
            - 6.0 * a * a * (13.0 - 11.0 * a) * p(b, 5)
            + (15.0 - 13.0 * a) * a * a * p(b, 6));
    c[3][2] = 128.0
        * oma
        * oma
        * (1.0 - 2.0 * (2.0 + a) * b - (4.0 - 18.0 * a) * b * b + (4.0 - 6.0 * a - 14.0 * a * a) * p(b, 3)
            - (4.0 - 13.0 * a) * a * p(b, 4)
            - 2.0 * a * a * p(b, 5));
    c[3][0] = 32.0
        * oma
        * (1.0 - b)
        * (a - (2.0 + 3.0 * a + 2.0 * a * a) * b + (22.0 - 21.0 * a + 19.0 * a * a) * b * b
            - a * (59.0 - 48.0 * a + 19.0 * a * a) * p(b, 3)
            + a * (22.0 + 18.0 * a - 15.0 * a * a) * p(b, 4)
            - a * a * (28.0 - 17.0 * a) * p(b, 5)
            + a * a * (5.0 - 3.0 * a) * p(b, 6));
    c[2][4] = 64.0
        * oma
        * oma
        * (1.0 + (8.0 - 12.0 * a) * b - 2.0 * (4.0 - a - 6.0 * a * a) * b * b
            + 4.0 * a * (2.0 - 3.0 * a) * p(b, 3)
            + a * a * p(b, 4));
    c[2][2] = -32.0
        * oma
        * (1.0 + (12.0 - 26.0 * a + 8.0 * a * a) * b - (15.0 - 3.0 * a - 35.0 * a * a + 8.0 * p(a, 3)) * b * b
            - (22.0 - 96.0 * a + 90.0 * a * a + 4.0 * p(a, 3)) * p(b, 3)
            + (12.0 - 25.0 * a - 35.0 * a * a + 63.0 * p(a, 3)) * p(b, 4)
            - 2.0 * a * (6.0 - 26.0 * a + 23.0 * a * a) * p(b, 5)
            - a * a * (6.0 - 7.0 * a) * p(b, 6));
    c[2][0] = 4.0 * (2.0 - a) * a - 16.0 * a * (9.0 - 8.0 * a + a * a) * b
        + 4.0 * (24.0 + 78.0 * a - 36.0 * a * a - 42.0 * p(a, 3) + 4.0 * p(a, 4)) * b * b
        - 32.0 * (26.0 - 41.0 * a + 64.0 * a * a - 45.0 * p(a, 3) + 3.0 * p(a, 4)) * p(b, 3)
        + 4.0 * (104.0 + 286.0 * a - 438.0 * a * a + 322.0 * p(a, 3) - 204.0 * p(a, 4)) * p(b, 4)
        - 16.0 * a * (105.0 - 96.0 * a + 33.0 * a * a - 28.0 * p(a, 3)) * p(b, 5)
        + 8.0 * a * (41.0 + 102.0 * a - 163.0 * a * a + 34.0 * p(a, 3)) * p(b, 6)
        - 32.0 * a * a * (16.0 - 20.0 * a + 5.0 * a * a) * p(b, 7)
        + 4.0 * a * a * (15.0 - 18.0 * a + 4.0 * a * a) * p(b, 8);
    c[1][4] = 64.0
        * oma
        * oma
        * (1.0 - (3.0 + 2.0 * a) * b - (8.0 - 18.0 * a) * b * b + 2.0 * (4.0 - 2.0 * a - 7.0 * a * a) * p(b, 3)
            - a * (8.0 - 13.0 * a) * p(b, 4)
            - a * a * p(b, 5));
    c[1][2] = -32.0
        * oma
        * (2.0 - a - (6.0 + 3.0 * a - 2.0 * a * a) * b - (16.0 - 58.0 * a + 21.0 * a * a) * b * b
            + (14.0 - 20.0 * a - 48.0 * a * a + 19.0 * p(a, 3)) * p(b, 3)
            + (14.0 - 53.0 * a + 78.0 * a * a - 4.0 * p(a, 3)) * p(b, 4)
            - (4.0 - 3.0 * a - 16.0 * a * a + 36.0 * p(a, 3)) * p(b, 5)
            + a * (4.0 - 17.0 * a + 20.0 * a * a) * p(b, 6)
            + a * a * (2.0 - 3.0 * a) * p(b, 7));
    c[1][0] = 4.0
        * g
        * (a - (4.0 - a + 2.0 * a * a) * b + (28.0 - 30.0 * a + 12.0 * a * a) * b * b
            - (8.0 + 22.0 * a - 20.0 * a * a) * p(b, 3)
            + a * (21.0 - 16.0 * a) * p(b, 4)
            - a * (3.0 - 2.0 * a) * p(b, 5));
    c[0][6] = 256.0 * p(oma, 3) * (1.0 - b) * b * (1.0 - a * b);
    c[0][4] = 16.0
        * oma
        * oma
        * (1.0 - (26.0 - 8.0 * a) * b + (41.0 + 30.0 * a - 8.0 * a * a) * b * b
            - 4.0 * (1.0 + 21.0 * a + a * a) * p(b, 3)
            - (8.0 - 30.0 * a - 41.0 * a * a) * p(b, 4)
            + 2.0 * (4.0 - 13.0 * a) * a * p(b, 5)
            + a * a * p(b, 6));
    c[0][2] = -8.0
        * oma
        * (1.0 - b)
        * (2.0 - a - (18.0 - 7.0 * a + 2.0 * a * a) * b + (32.0 + 16.0 * a + a * a + 2.0 * p(a, 3)) * b * b
            + (24.0 - 138.0 * a + 29.0 * a * a - 10.0 * p(a, 3)) * p(b, 3)
            + (10.0 - 29.0 * a + 138.0 * a * a - 24.0 * p(a, 3)) * p(b, 4)
            - (2.0 + a + 16.0 * a * a + 32.0 * p(a, 3)) * p(b, 5)
            + a * (2.0 - 7.0 * a + 18.0 * a * a) * p(b, 6)
            + a * a * (1.0 - 2.0 * a) * p(b, 7));
    c[0][0] = (1.0 - 6.0 * b + b * b) * g * g;
    c
}

impl ImplicitSexticQ0 {
    /// Requires `beta` in `[0, 1]`, i.e. `1 <= R <= Rc` at `Q = 0`.
    pub fn from_beta(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0,1)")));
        }
        if !(-1e-12..=1.0 + 1e-12).contains(&beta) {
            return Err(Error::InvalidParameter(format!("beta = {beta} outside [0,1]")));
        }
        Ok(ImplicitSexticQ0 { alpha, beta, coeffs: table(alpha, beta) })
    }

    pub fn new(alpha: f64, r: f64) -> Result<Self> {
        Self::from_beta(alpha, (r - 1.0) / ((r + 1.0) * sqrt(alpha)))
    }

    fn prefactor(&self) -> f64 {
        let oma = 1.0 - self.alpha;
        oma * oma * powi(self.alpha, 6)
    }

    /// `A` in the scaled coordinates `(Z1, Z2)`.
    pub fn eval_scaled(&self, z1: f64, z2: f64) -> f64 {
        let mut acc = 0.0;
        for n1 in (0..7).rev() {
            let mut row = 0.0;
            for n2 in (0..7).rev() {
                row = row * z2 + self.coeffs[n1][n2];
            }
            acc = acc * z1 + row;
        }
        self.prefactor() * acc
    }

    /// Sum of the absolute values of the terms of `A`, the natural scale
    /// against which a vanishing value is judged.
    pub fn scale_scaled(&self, z1: f64, z2: f64) -> f64 {
        let mut acc = 0.0;
        for n1 in 0..7 {
            for n2 in 0..7 {
                acc += (self.coeffs[n1][n2] * powi(z1, n1 as i32) * powi(z2, n2 as i32)).abs();
            }
        }
        self.prefactor() * acc
    }

    pub fn scaled_coords(&self, z1: f64, z2: f64) -> (f64, f64) {
        (z1 / sqrt(self.alpha), z2 / sqrt(1.0 - self.alpha))
    }

    /// `A(z1, z2)` in diagonal coordinates.
    pub fn eval(&self, z1: f64, z2: f64) -> f64 {
        let (a, b) = self.scaled_coords(z1, z2);
        self.eval_scaled(a, b)
    }

    pub fn eval_xy(&self, x: f64, y: f64) -> f64 {
        self.eval(x - y, 1.0 - x - y)
    }

    pub fn scale_xy(&self, x: f64, y: f64) -> f64 {
        let (a, b) = self.scaled_coords(x - y, 1.0 - x - y);
        self.scale_scaled(a, b)
    }
}

/// Factorised form at `beta = 1` (`R = Rc`): a double line, the arctic
/// ellipse and a point circle.
pub fn beta_one_form(alpha: f64, z1: f64, z2: f64) -> f64 {
    let oma = 1.0 - alpha;
    64.0 * powi(oma, 6) * powi(alpha, 6) * (z1 - 1.0) * (z1 - 1.0) * (z1 * z1 + z2 * z2 - 1.0)
        * ((z1 - 1.0) * (z1 - 1.0) + z2 * z2)
}

/// Factorised form at `beta = 0` (`R = 1`): a double line tangent to two
/// ellipses of radius 1/2.
pub fn beta_zero_form(alpha: f64, z1: f64, z2: f64) -> f64 {
    let oma = 1.0 - alpha;
    let h = 0.5 / sqrt(oma);
    let e = |c: f64| (z2 - c) * (z2 - c) + z1 * z1 - 0.25;
    16.0 * powi(oma, 4) * powi(alpha, 6) * (2.0 * z1 + 1.0) * (2.0 * z1 + 1.0) * e(h) * e(-h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c06_value() {
        let s = ImplicitSexticQ0::from_beta(0.3, 0.5).unwrap();
        assert!((s.coeffs[0][6] - 256.0 * 0.343 * 0.5 * 0.5 * 0.85).abs() < 1e-12);
        assert!((s.coeffs[0][6] - 18.65920).abs() < 1e-9);
    }

    #[test]
    fn beta_value() {
        let s = ImplicitSexticQ0::new(0.3, 1.5).unwrap();
        assert!((s.beta - 0.36515).abs() < 1e-5);
        assert!(ImplicitSexticQ0::new(0.3, 4.0).is_err());
    }

    #[test]
    fn odd_powers_of_z2_vanish() {
        let s = ImplicitSexticQ0::from_beta(0.4, 0.7).unwrap();
        for n1 in 0..7 {
            for n2 in (1..7).step_by(2) {
                assert_eq!(s.coeffs[n1][n2], 0.0);
            }
        }
        assert!((s.eval_scaled(0.3, 0.8) - s.eval_scaled(0.3, -0.8)).abs() < 1e-15);
    }

    #[test]
    fn limits_factorise() {
        for alpha in [0.2, 0.3, 0.6] {
            let one = ImplicitSexticQ0::from_beta(alpha, 1.0).unwrap();
            let zero = ImplicitSexticQ0::from_beta(alpha, 0.0).unwrap();
            for (z1, z2) in [(0.3, 0.9), (-1.2, 0.4), (2.0, -1.5)] {
                let f1 = beta_one_form(alpha, z1, z2);
                assert!((one.eval_scaled(z1, z2) - f1).abs() <= 1e-8 * f1.abs());
                let f0 = beta_zero_form(alpha, z1, z2);
                assert!((zero.eval_scaled(z1, z2) - f0).abs() <= 1e-8 * f0.abs());
            }
        }
    }
}
