//! The resolvent `W(z)` on the two sheets of `S^2 = (z-a)(z-b)` and its
//! functional inverse `z(u)` solving `W(z) = -log u`.

use alloc::format;

use super::regime::{ab_q0, Regime, RegimeParams};
use crate::fmath::{ln, sqrt};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    Principal,
    Second,
}

/// A point `(z, S)` on the spectral curve `S^2 = (z-a)(z-b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub z: f64,
    pub s: f64,
}

/// `sqrt((z-a)(z-b))` with the branch behaving like `z` at infinity.
pub fn principal_s(z: f64, a: f64, b: f64) -> Result<f64> {
    let v = (z - a) * (z - b);
    if v < 0.0 {
        return Err(Error::InvalidParameter(format!("z = {z} lies inside the cut [{a}, {b}]")));
    }
    let s = sqrt(v);
    Ok(if z < a { -s } else { s })
}

impl SpectralPoint {
    pub fn sheet(&self, a: f64) -> Sheet {
        let sign = if self.z < a { -1.0 } else { 1.0 };
        if self.s * sign >= 0.0 {
            Sheet::Principal
        } else {
            Sheet::Second
        }
    }
}

fn check_u(u: f64, alpha: f64) -> Result<()> {
    if u == 1.0 || u == alpha {
        return Err(Error::Pole(format!("z(u) at u = {u}")));
    }
    Ok(())
}

/// Regime I: a single rational branch.
fn z_regime_one(u: f64, p: &RegimeParams) -> Result<SpectralPoint> {
    let (alpha, q) = (p.alpha, p.q);
    let z = -((1.0 - alpha * (1.0 + q)) * u + alpha * q) / ((u - 1.0) * (u - alpha));
    let (c0, c1) = product_coeffs(z, p);
    let s = (u * (p.b - p.a) * z / sqrt(alpha) - c0) / c1;
    Ok(SpectralPoint { z, s })
}

/// `sqrt(a(z-b)) + sqrt(b(z-a))` times its `Q`-shifted companion, written
/// as `c0 + c1 S`.
fn product_coeffs(z: f64, p: &RegimeParams) -> (f64, f64) {
    let (qa, qb) = (sqrt(p.a + p.q), sqrt(p.b + p.q));
    let c0 = p.sqrt_b * qb * (z - p.a) + p.sqrt_a * qa * (z - p.b);
    let c1 = p.sqrt_a * qb + p.sqrt_b * qa;
    (c0, c1)
}

/// Closed form for Regime II at `Q = 0`; `sign` picks the branch.
pub fn zpm(u: f64, r: f64, alpha: f64, sign: f64) -> Result<SpectralPoint> {
    check_u(u, alpha)?;
    let sa = sqrt(alpha);
    let d = (u - alpha) * (u - 1.0);
    let rad = r * r * d + (1.0 + sa) * (1.0 + sa) * u;
    if rad < 0.0 {
        return Err(Error::NegativeRadicand { context: "z(u) at Q = 0", value: rad });
    }
    let z = 0.5 * r - (1.0 - alpha) * u / (2.0 * d) + sign * (u - sa) * sqrt(rad) / (2.0 * d);
    let (a, b) = ab_q0(r, alpha);
    let t = u / sa;
    let c = (1.0 - sa) / (1.0 + sa);
    let s = (1.0 + t) * (c * z - sqrt(a * b)) / (t - 1.0);
    if !s.is_finite() {
        return Err(Error::Pole(format!("sheet of z(u) at u = {u}")));
    }
    Ok(SpectralPoint { z, s })
}

/// Generic Regime II branch through the `M_i(u)` chain.
pub fn zgen(u: f64, p: &RegimeParams, sign: f64) -> Result<SpectralPoint> {
    check_u(u, p.alpha)?;
    let kl = p
        .kl
        .ok_or_else(|| Error::InvalidParameter("z(u) chain needs Regime II parameters".into()))?;
    let [m0, m1, m2] = kl.m_at(u, p.alpha);
    let (a, b) = (p.a, p.b);
    let h = 0.5 * (b - a);
    let x = (a * m1 + m0) * (b * m1 + m0) + h * h * m2 * m2;
    if x < 0.0 {
        return Err(Error::NegativeRadicand { context: "z(u) for generic Q", value: x });
    }
    let den = m2 * m2 - m1 * m1;
    let z = (m0 * m1 + 0.5 * (a + b) * m2 * m2 + sign * m2 * sqrt(x)) / den;
    if m2 == 0.0 || !z.is_finite() {
        return Err(Error::Pole(format!("z(u) chain degenerate at u = {u}")));
    }
    let s = -(m1 * z + m0) / m2;
    Ok(SpectralPoint { z, s })
}

/// `z(u)` on the branch selected by `sign` (ignored in Regime I).
pub fn inverse_resolvent(u: f64, p: &RegimeParams, sign: f64) -> Result<SpectralPoint> {
    check_u(u, p.alpha)?;
    match p.regime {
        Regime::I => z_regime_one(u, p),
        _ if p.q == 0.0 => zpm(u, p.r, p.alpha, sign),
        _ => zgen(u, p, sign),
    }
}

/// `exp(-W(z))` on the requested sheet, in rationalized product form.
pub fn exp_minus_resolvent(z: f64, sheet: Sheet, p: &RegimeParams) -> Result<f64> {
    let s0 = principal_s(z, p.a, p.b)?;
    let s = if sheet == Sheet::Principal { s0 } else { -s0 };
    exp_minus_resolvent_at(SpectralPoint { z, s }, p)
}

/// `exp(-W)` at a point of the spectral curve given together with `S`.
pub fn exp_minus_resolvent_at(pt: SpectralPoint, p: &RegimeParams) -> Result<f64> {
    let (z, s) = (pt.z, pt.s);
    if z == 0.0 {
        return Err(Error::Pole("W(z) at z = 0".into()));
    }
    let (a, b) = (p.a, p.b);
    let (c0, c1) = product_coeffs(z, p);
    let mut u = sqrt(p.alpha) * (c0 + c1 * s) / ((b - a) * z);
    if p.regime.is_two() {
        let r = p.r;
        if z == r {
            return Err(Error::Pole("W(z) at z = R".into()));
        }
        let f1 = ((r - a) * (z - b) + (r - b) * (z - a) - 2.0 * sqrt((r - a) * (r - b)) * s)
            / ((b - a) * (z - r));
        u *= f1;
    }
    Ok(u)
}

/// `W(z)` on the requested sheet; fails where `exp(-W)` is not positive.
pub fn resolvent(z: f64, sheet: Sheet, p: &RegimeParams) -> Result<f64> {
    let e = exp_minus_resolvent(z, sheet, p)?;
    if !(e > 0.0) {
        return Err(Error::Degenerate(format!("exp(-W) = {e} at z = {z}: W is not real")));
    }
    Ok(-ln(e))
}

/// The logarithmic display of `W` on the principal sheet, available in
/// Regime I and in Regime II at `Q = 0` for `z > max(b, R)`.
pub fn resolvent_log_form(z: f64, p: &RegimeParams) -> Result<f64> {
    let (a, b, alpha, q) = (p.a, p.b, p.alpha, p.q);
    let half_ln_alpha = 0.5 * ln(alpha);
    match p.regime {
        Regime::I => {
            if !(z > b) {
                return Err(Error::InvalidParameter(format!("log form needs z > b, got {z}")));
            }
            let n = sqrt((b - a) * z);
            let t = (p.sqrt_a * sqrt(z - b) + p.sqrt_b * sqrt(z - a)) / n;
            let pq = (sqrt((a + q) * (z - b)) + sqrt((b + q) * (z - a))) / n;
            Ok(-half_ln_alpha - ln(t) - ln(pq))
        }
        _ if q == 0.0 => {
            let r = p.r;
            if !(z > b && z > r) {
                return Err(Error::InvalidParameter(format!("log form needs z > max(b, R), got {z}")));
            }
            let num = sqrt(a * (z - b)) + sqrt(b * (z - a));
            let den = sqrt((r - a) * (z - b)) + sqrt((r - b) * (z - a));
            Ok(-half_ln_alpha + ln(z / (z - r)) - 2.0 * ln(num / den))
        }
        _ => Err(Error::InvalidParameter("no log form for Regime II with Q > 0".into())),
    }
}
