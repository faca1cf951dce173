//! The quartic `P(u)` whose roots are the parameters of the tangent lines
//! through a point, and the factorisation of its discriminant at `Q = 0`.

use alloc::vec::Vec;

use super::sextic::ImplicitSexticQ0;
use crate::fmath::sqrt;
use crate::geometry::ScaledGeometry;
use crate::Result;

fn mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = alloc::vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients of `P(u) = G(u)^2 - H(u)`, ascending, at the point with
/// diagonal coordinates `(z1, z2)`.
pub fn p_coefficients(alpha: f64, r: f64, z1: f64, z2: f64) -> Result<[f64; 5]> {
    let g = ScaledGeometry::from_ratios(r, 0.0)?;
    let (xx, xy) = (g.xi_x, g.xi_y);
    let sa = sqrt(alpha);
    let d = z1 - z2 - xx;
    let e = z1 + z2 + xy;
    let gp = [alpha * e, -d - e - alpha, d + 1.0];
    let c = [xx * xx * alpha, xy * xy * (1.0 + sa) * (1.0 + sa) - xx * xx * (1.0 + alpha), xx * xx];
    let h = mul(&mul(&[-sa, 1.0], &[-sa, 1.0]), &c);
    let g2 = mul(&gp, &gp);
    Ok([0, 1, 2, 3, 4].map(|i| g2[i] - h[i]))
}

/// Discriminant of `c0 + c1 u + c2 u^2 + c3 u^3 + c4 u^4`.
pub fn quartic_discriminant(c: &[f64; 5]) -> f64 {
    let (e, d, cc, b, a) = (c[0], c[1], c[2], c[3], c[4]);
    256.0 * a * a * a * e * e * e - 192.0 * a * a * b * d * e * e - 128.0 * a * a * cc * cc * e * e
        + 144.0 * a * a * cc * d * d * e
        - 27.0 * a * a * d * d * d * d
        + 144.0 * a * b * b * cc * e * e
        - 6.0 * a * b * b * d * d * e
        - 80.0 * a * b * cc * cc * d * e
        + 18.0 * a * b * cc * d * d * d
        + 16.0 * a * cc * cc * cc * cc * e
        - 4.0 * a * cc * cc * cc * d * d
        - 27.0 * b * b * b * b * e * e
        + 18.0 * b * b * b * cc * d * e
        - 4.0 * b * b * b * d * d * d
        - 4.0 * b * b * cc * cc * cc * e
        + b * b * cc * cc * d * d
}

/// The common tangent of the two branches, `z1 = (1+sqrt(alpha))/2 - xi_y`,
/// written as a linear form vanishing on it.
pub fn double_tangent_line(alpha: f64, r: f64, z1: f64) -> f64 {
    z1 - 0.5 * (1.0 + sqrt(alpha)) + 1.0 / (r + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminantSample {
    pub z1: f64,
    pub z2: f64,
    pub discriminant: f64,
    pub line_sq_times_a: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantReport {
    /// `D(P) / (line^2 A)` is the constant `4/alpha`.
    pub expected_ratio: f64,
    pub samples: Vec<DiscriminantSample>,
    pub max_relative_deviation: f64,
}

/// Compares `D(P)` with `line^2 A` at each `(z1, z2)`.
pub fn discriminant_check(alpha: f64, r: f64, points: &[(f64, f64)]) -> Result<DiscriminantReport> {
    let sextic = ImplicitSexticQ0::new(alpha, r)?;
    let expected_ratio = 4.0 / alpha;
    let mut samples = Vec::with_capacity(points.len());
    let mut worst: f64 = 0.0;
    for &(z1, z2) in points {
        let disc = quartic_discriminant(&p_coefficients(alpha, r, z1, z2)?);
        let l = double_tangent_line(alpha, r, z1);
        let la = l * l * sextic.eval(z1, z2);
        let ratio = disc / la;
        worst = worst.max((ratio / expected_ratio - 1.0).abs());
        samples.push(DiscriminantSample { z1, z2, discriminant: disc, line_sq_times_a: la, ratio });
    }
    Ok(DiscriminantReport { expected_ratio, samples, max_relative_deviation: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_discriminant_of_known_roots() {
        // (u-1)(u-2)(u-3)(u-5): prod of squared differences = 1*4*16*1*9*4
        let c = [30.0, -61.0, 41.0, -11.0, 1.0];
        assert!((quartic_discriminant(&c) - 2304.0).abs() < 1e-9);
        let double = [4.0, -12.0, 13.0, -6.0, 1.0];
        assert!(quartic_discriminant(&double).abs() < 1e-9);
    }

    #[test]
    fn factorisation_constant() {
        let pts = [(0.1, 0.2), (-0.3, 0.5), (0.25, -0.4), (0.6, 0.1)];
        let rep = discriminant_check(0.3, 1.5, &pts).unwrap();
        assert!(rep.max_relative_deviation < 1e-8, "{rep:?}");
    }
}
