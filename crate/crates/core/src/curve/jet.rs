//! Second-order jets: a value with its first and second derivative along
//! one parameter. Enough to differentiate the closed-form tangent families
//! without finite differences.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::fmath::sqrt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub d: f64,
    pub dd: f64,
}

impl Jet2 {
    pub const fn constant(v: f64) -> Self {
        Jet2 { v, d: 0.0, dd: 0.0 }
    }

    pub const fn variable(v: f64) -> Self {
        Jet2 { v, d: 1.0, dd: 0.0 }
    }

    pub fn scale(self, k: f64) -> Self {
        Jet2 { v: k * self.v, d: k * self.d, dd: k * self.dd }
    }

    /// Square root; the caller guarantees `v > 0`.
    pub fn sqrt(self) -> Self {
        let s = sqrt(self.v);
        let d = self.d / (2.0 * s);
        let dd = (self.dd - 2.0 * d * d) / (2.0 * s);
        Jet2 { v: s, d, dd }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        let d = -self.d * r * r;
        let dd = (2.0 * self.d * self.d * r - self.dd) * r * r;
        Jet2 { v: r, d, dd }
    }
}

/// Evaluates `c[0] + c[1] x + c[2] x^2 + ...` on a jet.
pub fn poly(c: &[f64], x: Jet2) -> Jet2 {
    let mut acc = Jet2::constant(0.0);
    for &ci in c.iter().rev() {
        acc = acc * x + Jet2::constant(ci);
    }
    acc
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v + o.v, d: self.d + o.d, dd: self.dd + o.dd }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v - o.v, d: self.d - o.d, dd: self.dd - o.dd }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
            dd: self.dd * o.v + 2.0 * self.d * o.d + self.v * o.dd,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_rules() {
        let x = Jet2::variable(2.0);
        let f = (x * x + Jet2::constant(1.0)).sqrt() / x;
        let g = |t: f64| (t * t + 1.0).sqrt() / t;
        let h = 1e-4;
        let fd1 = (g(2.0 + h) - g(2.0 - h)) / (2.0 * h);
        let fd2 = (g(2.0 + h) - 2.0 * g(2.0) + g(2.0 - h)) / (h * h);
        assert!((f.v - g(2.0)).abs() < 1e-15);
        assert!((f.d - fd1).abs() < 1e-8);
        assert!((f.dd - fd2).abs() < 1e-6);
    }

    #[test]
    fn polynomial_derivatives() {
        let p = poly(&[1.0, -2.0, 3.0], Jet2::variable(0.5));
        assert_eq!(p, Jet2 { v: 0.75, d: 1.0, dd: 6.0 });
    }
}
