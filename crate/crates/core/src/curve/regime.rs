//! Regime classification and the support endpoints `a < b` of the limiting
//! log-gas density.

use alloc::format;

use crate::fmath::sqrt;
use crate::{Error, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0,1)")))
    }
}

/// `Rc = (1 + sqrt(alpha (1+Q)))^2 / (1 - alpha)`.
pub fn critical_r(q: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(q >= 0.0) {
        return Err(Error::InvalidParameter(format!("Q = {q} must be >= 0")));
    }
    let t = 1.0 + sqrt(alpha * (1.0 + q));
    Ok(t * t / (1.0 - alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    I,
    IIA,
    IIB,
}

impl Regime {
    pub fn is_two(self) -> bool {
        !matches!(self, Regime::I)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub regime: Regime,
    /// `R` equals `Rc` to within rounding.
    pub boundary: bool,
    pub critical_r: f64,
}

/// Regime I when `R >= Rc`, Regime II otherwise. Regime II is split by the
/// sign of `sqrt(A+) - sqrt(A-)`, so classifying it needs the `eta` root.
pub fn classify_regime(r: f64, q: f64, alpha: f64) -> Result<Classification> {
    if !(r >= 1.0) {
        return Err(Error::InvalidParameter(format!("R = {r} must be >= 1")));
    }
    let rc = critical_r(q, alpha)?;
    let boundary = (r - rc).abs() <= 1e-12 * rc;
    let regime = if r >= rc || boundary {
        Regime::I
    } else if solve_eta_ab(r, q, alpha)?.sqrt_a >= 0.0 {
        Regime::IIA
    } else {
        Regime::IIB
    };
    Ok(Classification { regime, boundary, critical_r: rc })
}

/// Slope of the tangent family `x - M(w) y - Phi(w) = 0`.
pub fn slope_m(w: f64, alpha: f64) -> Result<f64> {
    if w.is_infinite() {
        return Ok(0.0);
    }
    let den = (w - 1.0) * (alpha * w + 1.0 - alpha);
    if den == 0.0 {
        return Err(Error::Pole(format!("M(w) at w = {w}")));
    }
    Ok(w / den)
}

/// `u = (alpha w + 1 - alpha) / w`; `w = inf` maps to `alpha`.
pub fn u_of_w(w: f64, alpha: f64) -> Result<f64> {
    if w.is_infinite() {
        return Ok(alpha);
    }
    if w == 0.0 {
        return Err(Error::Pole("u(w) at w = 0".into()));
    }
    Ok(alpha + (1.0 - alpha) / w)
}

/// `w = (1 - alpha) / (u - alpha)`; `u = alpha` maps to `inf`.
pub fn w_of_u(u: f64, alpha: f64) -> f64 {
    if u.is_infinite() {
        return 0.0;
    }
    (1.0 - alpha) / (u - alpha)
}

/// The coefficient chain expressing `(z, S)` on the spectral curve through
/// the linear functions `M_i(u) = L_i u / sqrt(alpha) - K_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlChain {
    pub k: [f64; 3],
    pub l: [f64; 3],
}

impl KlChain {
    /// `[M0, M1, M2]` at `u`, each as `(constant, slope)`.
    pub fn m_coeffs(&self, alpha: f64) -> [[f64; 2]; 3] {
        let sa = sqrt(alpha);
        [0, 1, 2].map(|i| [-self.k[i], self.l[i] / sa])
    }

    pub fn m_at(&self, u: f64, alpha: f64) -> [f64; 3] {
        self.m_coeffs(alpha).map(|[c, s]| c + s * u)
    }
}

/// Endpoints and auxiliary data for a given `(R, Q, alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeParams {
    pub regime: Regime,
    pub boundary: bool,
    pub alpha: f64,
    pub r: f64,
    pub q: f64,
    pub a: f64,
    pub b: f64,
    /// `sqrt(a)` with the sign that makes the resolvent single-valued;
    /// negative in Regime I for `Q > 1/alpha - 1` and in Regime II_B.
    pub sqrt_a: f64,
    pub sqrt_b: f64,
    pub eta: Option<f64>,
    pub a_plus: Option<f64>,
    pub a_minus: Option<f64>,
    pub kl: Option<KlChain>,
}

impl RegimeParams {
    pub fn new(r: f64, q: f64, alpha: f64) -> Result<Self> {
        let c = classify_regime(r, q, alpha)?;
        if c.regime == Regime::I {
            Ok(regime_one(r, q, alpha, c.boundary))
        } else {
            solve_eta_ab(r, q, alpha)
        }
    }

    /// The Regime II value of `Q` at which `a` vanishes is not `1/alpha - 1`;
    /// this reports the sign of `sqrt(a)` instead.
    pub fn is_past_a_zero(&self) -> bool {
        self.sqrt_a < 0.0
    }
}

fn regime_one(r: f64, q: f64, alpha: f64, boundary: bool) -> RegimeParams {
    let t = sqrt(alpha * (1.0 + q));
    let den = sqrt(1.0 - alpha);
    let sqrt_a = (1.0 - t) / den;
    let sqrt_b = (1.0 + t) / den;
    RegimeParams {
        regime: Regime::I,
        boundary,
        alpha,
        r,
        q,
        a: sqrt_a * sqrt_a,
        b: sqrt_b * sqrt_b,
        sqrt_a,
        sqrt_b,
        eta: None,
        a_plus: None,
        a_minus: None,
        kl: None,
    }
}

/// Left side of the quartic for `eta`.
pub fn eta_equation(eta: f64, r: f64, q: f64, alpha: f64) -> f64 {
    let p = 1.0 + eta;
    let m = 1.0 - eta;
    alpha * p * p * (1.0 + q + r * eta) * (1.0 + (r + q) * eta)
        - m * m * (1.0 + r * eta) * (1.0 + q + (r + q) * eta)
}

fn eta_derivative(eta: f64, r: f64, q: f64, alpha: f64) -> f64 {
    let p = 1.0 + eta;
    let m = 1.0 - eta;
    let (f1, f2) = (1.0 + q + r * eta, 1.0 + (r + q) * eta);
    let (g1, g2) = (1.0 + r * eta, 1.0 + q + (r + q) * eta);
    alpha * (2.0 * p * f1 * f2 + p * p * (r * f2 + (r + q) * f1))
        - (-2.0 * m * g1 * g2 + m * m * (r * g2 + (r + q) * g1))
}

/// Number of sign changes of the `eta` quartic on a uniform grid of `n`
/// cells in `[0, 1]`.
pub fn eta_sign_changes(r: f64, q: f64, alpha: f64, n: usize) -> usize {
    let mut prev = eta_equation(0.0, r, q, alpha);
    let mut count = 0;
    for i in 1..=n {
        let v = eta_equation(i as f64 / n as f64, r, q, alpha);
        if v != 0.0 && prev != 0.0 && (v > 0.0) != (prev > 0.0) {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    count
}

/// Root of the quartic in `[0, 1]`; the left side is negative at 0 and
/// positive at 1, so bisection brackets it.
pub fn solve_eta(r: f64, q: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let f = |e: f64| eta_equation(e, r, q, alpha);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::NoRoot(format!("eta quartic not bracketed for R={r}, Q={q}")));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut eta = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = eta_derivative(eta, r, q, alpha);
        if d == 0.0 {
            break;
        }
        let next = eta - f(eta) / d;
        if !(next >= lo - 1e-12 && next <= hi + 1e-12) {
            break;
        }
        eta = next;
    }
    Ok(eta)
}

/// Regime II data: `eta`, `A+-`, `a`, `b` and the coefficient chain.
pub fn solve_eta_ab(r: f64, q: f64, alpha: f64) -> Result<RegimeParams> {
    let rc = critical_r(q, alpha)?;
    if !(r >= 1.0 && r < rc) {
        return Err(Error::NoRoot(format!("R = {r} outside Regime II [1, {rc})")));
    }
    let eta = solve_eta(r, q, alpha)?;
    let d = 2.0 + q + (2.0 * r + q) * eta;
    let d2 = d * d;
    let a_plus = (r + q + 1.0) * (1.0 + eta) * (1.0 + r * eta) * (1.0 + (r + q) * eta) / d2;
    let a_minus = (r - 1.0) * (1.0 - eta) * (1.0 + q + r * eta) * (1.0 + q + (r + q) * eta) / d2;
    let (sp, sm) = (sqrt(a_plus), sqrt(a_minus));
    let sqrt_a = sp - sm;
    let sqrt_b = sp + sm;
    let a = sqrt_a * sqrt_a;
    let b = sqrt_b * sqrt_b;
    let regime = if sqrt_a >= 0.0 { Regime::IIA } else { Regime::IIB };
    let mut p = RegimeParams {
        regime,
        boundary: false,
        alpha,
        r,
        q,
        a,
        b,
        sqrt_a,
        sqrt_b,
        eta: Some(eta),
        a_plus: Some(a_plus),
        a_minus: Some(a_minus),
        kl: None,
    };
    p.kl = Some(kl_chain(&p));
    Ok(p)
}

/// `K_i`, `L_i` from the endpoints.
pub fn kl_chain(p: &RegimeParams) -> KlChain {
    let (a, b, r, q) = (p.a, p.b, p.r, p.q);
    let (ra, rb) = (sqrt((r - a).max(0.0)), sqrt((r - b).max(0.0)));
    let (qa, qb) = (sqrt(a + q), sqrt(b + q));
    let (sa, sb) = (p.sqrt_a, p.sqrt_b);
    KlChain {
        k: [a * rb * qb - b * ra * qa, ra * qa - rb * qb, ra * qb - rb * qa],
        l: [b * ra * sa - a * rb * sb, rb * sb - ra * sa, ra * sb - rb * sa],
    }
}

/// Residuals of the two endpoint equations of Regime II.
pub fn ab_residuals(p: &RegimeParams) -> [f64; 2] {
    let (a, b, r, q, alpha) = (p.a, p.b, p.r, p.q, p.alpha);
    let (ra, rb) = (sqrt(r - a), sqrt(r - b));
    let (qa, qb) = (sqrt(a + q), sqrt(b + q));
    let r1 = sqrt(alpha) * (ra - rb) / (ra + rb) * (p.sqrt_b + p.sqrt_a) / (qb - qa) - 1.0;
    let r2 = 0.5 * (p.sqrt_a * p.sqrt_b + qa * qb - q) + ra * rb - 1.0;
    [r1, r2]
}

/// Closed-form endpoints for `Q = 0` in Regime II.
pub fn ab_q0(r: f64, alpha: f64) -> (f64, f64) {
    let sa = sqrt(alpha);
    let (p, m) = (sqrt(r + 1.0), sqrt((r - 1.0) * sa));
    let den = 2.0 * (1.0 + sa);
    ((p - m) * (p - m) / den, (p + m) * (p + m) / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_values() {
        assert!((critical_r(0.0, 0.3).unwrap() - 3.42206445001476).abs() < 1e-12);
        assert!((critical_r(1.0, 0.5).unwrap() - 8.0).abs() < 1e-12);
        let sa = 0.3f64.sqrt();
        assert!((critical_r(0.0, 0.3).unwrap() - (1.0 + sa) / (1.0 - sa)).abs() < 1e-12);
        assert!(critical_r(0.0, 1.0).is_err());
        assert!(critical_r(0.0, 0.0).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_regime(4.0, 0.0, 0.3).unwrap().regime, Regime::I);
        assert_eq!(classify_regime(1.5, 0.0, 0.3).unwrap().regime, Regime::IIA);
        let rc = critical_r(0.0, 0.3).unwrap();
        let c = classify_regime(rc, 0.0, 0.3).unwrap();
        assert!(c.boundary && c.regime == Regime::I);
        assert!(classify_regime(0.5, 0.0, 0.3).is_err());
    }

    #[test]
    fn slopes() {
        assert!((slope_m(2.0, 0.5).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(slope_m(f64::INFINITY, 0.5).unwrap(), 0.0);
        assert!(slope_m(1.0, 0.5).is_err());
        assert!(slope_m(-1.0, 0.5).is_err());
        assert!((w_of_u(0.75, 0.5) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn eta_at_q_zero() {
        for alpha in [0.2, 0.3, 0.5, 0.8] {
            let sa = f64::sqrt(alpha);
            let rc = critical_r(0.0, alpha).unwrap();
            let e = solve_eta(0.5 * (1.0 + rc), 0.0, alpha).unwrap();
            assert!((e - (1.0 - sa) / (1.0 + sa)).abs() < 1e-13);
        }
    }

    #[test]
    fn endpoints_match_closed_form() {
        let p = solve_eta_ab(1.5, 0.0, 0.3).unwrap();
        let (a, b) = ab_q0(1.5, 0.3);
        assert!((p.a - a).abs() < 1e-12 && (p.b - b).abs() < 1e-12);
        let (a1, b1) = ab_q0(1.0, 0.3);
        assert!((a1 - b1).abs() < 1e-15);
        assert!((a1 - 1.0 / (1.0 + 0.3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn small_q_endpoints() {
        let p = solve_eta_ab(1.5, 1e-8, 0.3).unwrap();
        assert!((p.a - 0.36149431740947).abs() < 1e-7);
        assert!((p.b - 1.43072694686148).abs() < 1e-7);
        assert!(ab_residuals(&p).iter().all(|r| r.abs() < 1e-10));
    }

    #[test]
    fn kl_identity() {
        let p = solve_eta_ab(1.5, 0.4, 0.3).unwrap();
        let kl = p.kl.unwrap();
        for u in [0.5, 0.9] {
            let m = kl.m_at(u, 0.3);
            let lhs = m[2] * m[2] - m[1] * m[1];
            let rhs = (p.b - p.a).powi(2) * (u - 0.3) * (u - 1.0) / 0.3;
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn past_a_zero_in_regime_two() {
        let p = RegimeParams::new(2.0, 8.0, 0.5).unwrap();
        assert_eq!(p.regime, Regime::IIB);
        assert!(p.is_past_a_zero());
        assert!(ab_residuals(&p).iter().all(|r| r.abs() < 1e-10));
        assert!(solve_eta_ab(5.0, 0.0, 0.3).is_err());
    }
}
