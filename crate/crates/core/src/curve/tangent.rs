//! The tangent family `x - M(w) y - Phi(w) = 0` and its caustic.
//!
//! Writing `u = (alpha w + 1 - alpha)/w` and `Psi(u) = u(u-1) Phi`, every
//! regime has `Psi = (A(u) + sign B(u) sqrt(C(u))) / D` with `A`, `C`
//! quadratic and `B` linear, and the family becomes
//! `u(u-1) x + (u-alpha) y = Psi(u)`. Near `u = inf` the same family is
//! used in the variable `t = 1/u`.

use alloc::format;

use super::jet::{poly, Jet2};
use super::regime::{slope_m, u_of_w, Regime, RegimeParams};
use crate::fmath::{cos, sin, sqrt};
use crate::geometry::ScaledGeometry;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// `Psi(u) = (A(u) + sign B(u) sqrt(C(u))) / D`, coefficients ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiForm {
    pub a: [f64; 3],
    pub b: [f64; 2],
    pub c: [f64; 3],
    pub d: f64,
}

fn mul_lin(p: [f64; 2], q: [f64; 2]) -> [f64; 3] {
    [p[0] * q[0], p[0] * q[1] + p[1] * q[0], p[1] * q[1]]
}

fn axpy3(k: f64, x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [k * x[0] + y[0], k * x[1] + y[1], k * x[2] + y[2]]
}

impl PsiForm {
    /// Regime I: `Psi = alpha (u - 1)`.
    pub fn regime_one(alpha: f64) -> Self {
        PsiForm { a: [-alpha, alpha, 0.0], b: [0.0; 2], c: [0.0; 3], d: 1.0 }
    }

    /// Regime II at `Q = 0`.
    pub fn q_zero(r: f64, alpha: f64) -> Self {
        let sa = sqrt(alpha);
        let p = (1.0 + sa) * (1.0 + sa);
        PsiForm {
            a: [-alpha * (r + 2.0), (r + 1.0) * alpha - r + 1.0, r],
            b: [-sa, 1.0],
            c: [r * r * alpha, p - r * r * (1.0 + alpha), r * r],
            d: 2.0 * (r + 1.0),
        }
    }

    /// Regime II for any `Q`, through the `M_i(u)` chain.
    pub fn generic(p: &RegimeParams) -> Result<Self> {
        let kl = p
            .kl
            .ok_or_else(|| Error::InvalidParameter("generic family needs Regime II parameters".into()))?;
        let (a, b, r, alpha) = (p.a, p.b, p.r, p.alpha);
        let gap = b - a;
        if !(gap > 1e-12) {
            return Err(Error::Degenerate(format!("support [{a}, {b}] collapsed")));
        }
        let [m0, m1, m2] = kl.m_coeffs(alpha);
        let m22 = mul_lin(m2, m2);
        let n = axpy3(0.5 * (a + b), m22, mul_lin(m0, m1));
        let am1 = [a * m1[0] + m0[0], a * m1[1] + m0[1]];
        let bm1 = [b * m1[0] + m0[0], b * m1[1] + m0[1]];
        let x = axpy3(0.25 * gap * gap, m22, mul_lin(am1, bm1));
        let k = alpha / (gap * gap);
        Ok(PsiForm {
            a: axpy3(k, n, [-alpha * (r + 1.0), r * alpha + 1.0, 0.0]),
            b: [k * m2[0], k * m2[1]],
            c: x,
            d: r + p.q + 1.0,
        })
    }

    fn has_radical(&self) -> bool {
        self.b != [0.0; 2]
    }

    fn eval(&self, a: &[f64], b: &[f64], c: &[f64], x: Jet2, sign: f64) -> Result<Jet2> {
        let mut num = poly(a, x);
        if self.has_radical() {
            let cv = poly(c, x);
            if cv.v < 0.0 {
                return Err(Error::NegativeRadicand { context: "tangent family", value: cv.v });
            }
            let root = cv.sqrt();
            if !(root.d.is_finite() && root.dd.is_finite()) {
                return Err(Error::Degenerate(format!("radicand of the tangent family vanishes at {}", x.v)));
            }
            num = num + (poly(b, x) * root).scale(sign);
        }
        Ok(num.scale(1.0 / self.d))
    }

    /// `Psi` and its first two `u`-derivatives.
    pub fn psi_u(&self, u: f64, sign: f64) -> Result<Jet2> {
        self.eval(&self.a, &self.b, &self.c, Jet2::variable(u), sign)
    }

    /// `t^2 Psi(1/t)` and its first two `t`-derivatives.
    pub fn psi_t(&self, t: f64, sign: f64) -> Result<Jet2> {
        let a = [self.a[2], self.a[1], self.a[0]];
        let b = [self.b[1], self.b[0]];
        let c = [self.c[2], self.c[1], self.c[0]];
        let s = if t.is_sign_negative() { -sign } else { sign };
        self.eval(&a, &b, &c, Jet2::variable(t), s)
    }

    /// Root of `B`, where the two branches share a tangent line.
    pub fn double_tangent_u(&self) -> Option<f64> {
        (self.b[1] != 0.0).then(|| -self.b[0] / self.b[1])
    }
}

/// Caustic point in the `u` chart: the line and its `u`-derivative.
pub fn caustic_u(u: f64, psi: Jet2, alpha: f64) -> (f64, f64) {
    let det = -(u * u - 2.0 * alpha * u + alpha);
    let x = (psi.v - (u - alpha) * psi.d) / det;
    let y = (u * (u - 1.0) * psi.d - (2.0 * u - 1.0) * psi.v) / det;
    (x, y)
}

/// Caustic point in the `t = 1/u` chart.
pub fn caustic_t(t: f64, psi: Jet2, alpha: f64) -> (f64, f64) {
    let det = 1.0 - 2.0 * alpha * t + alpha * t * t;
    let x = (psi.v * (1.0 - 2.0 * alpha * t) - (t - alpha * t * t) * psi.d) / det;
    let y = ((1.0 - t) * psi.d + psi.v) / det;
    (x, y)
}

/// Chart used for a point of the family; `u = inf` is `T(0.0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Chart {
    U(f64),
    T(f64),
}

impl Chart {
    pub fn from_u(u: f64) -> Chart {
        if u.abs() <= 2.0 {
            Chart::U(u)
        } else {
            Chart::T(1.0 / u)
        }
    }

    /// `t = w/(alpha w + 1 - alpha)`, so `w = 0` is `u = inf`.
    pub fn from_w(w: f64, alpha: f64) -> Chart {
        if w.is_infinite() {
            return Chart::U(alpha);
        }
        let t = w / (alpha * w + 1.0 - alpha);
        if t.abs() >= 0.5 {
            Chart::U(1.0 / t)
        } else {
            Chart::T(t)
        }
    }

    /// Angle parameterisation `u = tan(theta)`, `theta` in `[-pi/2, pi/2]`.
    pub fn from_angle(theta: f64) -> Chart {
        let (s, c) = (sin(theta), cos(theta));
        if c.abs() >= 0.5 * s.abs() {
            Chart::U(s / c)
        } else {
            Chart::T(c / s)
        }
    }

    pub fn u(self) -> f64 {
        match self {
            Chart::U(u) => u,
            Chart::T(t) if t == 0.0 => f64::INFINITY,
            Chart::T(t) => 1.0 / t,
        }
    }

    pub fn w(self, alpha: f64) -> f64 {
        match self {
            Chart::U(u) => {
                if u == alpha {
                    f64::INFINITY
                } else {
                    (1.0 - alpha) / (u - alpha)
                }
            }
            Chart::T(t) => (1.0 - alpha) * t / (1.0 - alpha * t),
        }
    }
}

/// One branch of the tangent family for a given geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFamily {
    pub params: RegimeParams,
    pub geometry: ScaledGeometry,
    pub psi: PsiForm,
    pub branch: Branch,
}

impl TangentFamily {
    /// Closed forms at `Q = 0`, the `M_i` chain otherwise.
    pub fn new(r: f64, q: f64, alpha: f64, branch: Branch) -> Result<Self> {
        let params = RegimeParams::new(r, q, alpha)?;
        let psi = match params.regime {
            Regime::I => PsiForm::regime_one(alpha),
            _ if q == 0.0 => PsiForm::q_zero(r, alpha),
            _ => PsiForm::generic(&params)?,
        };
        Self::with_form(params, psi, branch)
    }

    /// Forces the `M_i` chain in Regime II, including at `Q = 0`.
    pub fn generic(r: f64, q: f64, alpha: f64, branch: Branch) -> Result<Self> {
        let params = RegimeParams::new(r, q, alpha)?;
        let psi = match params.regime {
            Regime::I => PsiForm::regime_one(alpha),
            _ => PsiForm::generic(&params)?,
        };
        Self::with_form(params, psi, branch)
    }

    fn with_form(params: RegimeParams, psi: PsiForm, branch: Branch) -> Result<Self> {
        let geometry = ScaledGeometry::from_ratios(params.r, params.q)?;
        Ok(TangentFamily { params, geometry, psi, branch })
    }

    pub fn alpha(&self) -> f64 {
        self.params.alpha
    }

    pub fn slope(&self, w: f64) -> Result<f64> {
        slope_m(w, self.alpha())
    }

    /// `Psi(u)` with derivatives.
    pub fn psi(&self, u: f64) -> Result<Jet2> {
        self.psi.psi_u(u, self.branch.sign())
    }

    /// `Phi(w) = Psi(u) / (u (u - 1))`; removable zeros of `u(u-1)` are
    /// resolved by l'Hopital.
    pub fn phi(&self, w: f64) -> Result<f64> {
        let alpha = self.alpha();
        if w == 0.0 {
            let p = self.psi.psi_t(0.0, self.branch.sign())?;
            return Ok(p.v);
        }
        let u = u_of_w(w, alpha)?;
        let p = self.psi(u)?;
        let den = u * (u - 1.0);
        if den.abs() < 1e-14 {
            if p.v.abs() < 1e-12 {
                return Ok(p.d / (2.0 * u - 1.0));
            }
            return Err(Error::Pole(format!("Phi(w) at w = {w}")));
        }
        Ok(p.v / den)
    }

    pub fn point_chart(&self, chart: Chart) -> Result<(f64, f64)> {
        let sign = self.branch.sign();
        let alpha = self.alpha();
        match chart {
            Chart::U(u) => Ok(caustic_u(u, self.psi.psi_u(u, sign)?, alpha)),
            Chart::T(t) => Ok(caustic_t(t, self.psi.psi_t(t, sign)?, alpha)),
        }
    }

    /// Caustic point for the line with parameter `w` (`w = 0` and
    /// `w = inf` allowed).
    pub fn caustic_point(&self, w: f64) -> Result<(f64, f64)> {
        self.point_chart(Chart::from_w(w, self.alpha()))
    }

    pub fn point_u(&self, u: f64) -> Result<(f64, f64)> {
        self.point_chart(Chart::from_u(u))
    }

    /// Second derivative of the family along the envelope; it vanishes at
    /// cusps and has the same sign in both charts.
    pub fn cusp_function(&self, chart: Chart) -> Result<f64> {
        let sign = self.branch.sign();
        let alpha = self.alpha();
        match chart {
            Chart::U(u) => {
                let p = self.psi.psi_u(u, sign)?;
                let (x, _) = caustic_u(u, p, alpha);
                Ok(2.0 * x - p.dd)
            }
            Chart::T(t) => {
                let p = self.psi.psi_t(t, sign)?;
                let (_, y) = caustic_t(t, p, alpha);
                Ok(-2.0 * alpha * y - p.dd)
            }
        }
    }

    /// Caustic point from central differences of `Phi(w)`, with step
    /// `max(1e-6, 1e-6 |w|)`.
    pub fn caustic_point_fd(&self, w: f64) -> Result<(f64, f64)> {
        let h = (1e-6 * w.abs()).max(1e-6);
        let dphi = (self.phi(w + h)? - self.phi(w - h)?) / (2.0 * h);
        let alpha = self.alpha();
        let m = self.slope(w)?;
        let dm = (slope_m(w + h, alpha)? - slope_m(w - h, alpha)?) / (2.0 * h);
        if dm == 0.0 {
            return Err(Error::Degenerate(format!("M'(w) = 0 at w = {w}")));
        }
        Ok((-m * dphi / dm + self.phi(w)?, -dphi / dm))
    }

    /// Line parameter of the common tangent through the cut corner region:
    /// in Regime I the larger root of the line-through-`(xi_x, xi_y)`
    /// quadratic, in Regime II the double tangent of the two branches.
    pub fn w0(&self) -> Result<f64> {
        let alpha = self.alpha();
        let (xx, xy) = (self.geometry.xi_x, self.geometry.xi_y);
        match self.params.regime {
            Regime::I => {
                let qa = alpha * (xx - 1.0);
                let qb = (1.0 - 2.0 * alpha) * xx - xy + alpha;
                let qc = -(1.0 - alpha) * xx;
                let disc = qb * qb - 4.0 * qa * qc;
                if disc < 0.0 {
                    return Err(Error::NegativeRadicand { context: "w0 quadratic", value: disc });
                }
                if qa == 0.0 {
                    return Ok(-qc / qb);
                }
                let r1 = (-qb + sqrt(disc)) / (2.0 * qa);
                let r2 = (-qb - sqrt(disc)) / (2.0 * qa);
                Ok(r1.max(r2))
            }
            _ => {
                let u = self
                    .psi
                    .double_tangent_u()
                    .ok_or_else(|| Error::Degenerate("no double tangent".into()))?;
                Ok((1.0 - alpha) / (u - alpha))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ellipse(x: f64, y: f64, alpha: f64) -> f64 {
        let a = 1.0 - x - y;
        let b = x - y;
        a * a / (1.0 - alpha) + b * b / alpha - 1.0
    }

    #[test]
    fn regime_one_phi_and_points() {
        let f = TangentFamily::new(10.0, 0.0, 0.5, Branch::Plus).unwrap();
        assert!((f.phi(2.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((f.phi(1.0).unwrap() - 0.5).abs() < 1e-15);
        let (x, y) = f.caustic_point(2.0).unwrap();
        assert!((x - 0.8).abs() < 1e-14 && (y - 0.1).abs() < 1e-14);
        assert!(ellipse(x, y, 0.5).abs() < 1e-14);
        let (x, y) = f.caustic_point(1.0).unwrap();
        assert!((x - 0.5).abs() < 1e-14 && y.abs() < 1e-14);
        let (x, y) = f.caustic_point(f64::INFINITY).unwrap();
        assert!((x - 1.0).abs() < 1e-14 && (y - 0.5).abs() < 1e-14);
    }

    #[test]
    fn regime_one_closed_form() {
        let alpha = 0.3;
        let f = TangentFamily::new(10.0, 1.0, alpha, Branch::Minus).unwrap();
        for w in [1.5, 3.0, 10.0, -0.2, 0.1] {
            let (x, y) = f.caustic_point(w).unwrap();
            let d = alpha * w * w + 1.0 - alpha;
            assert!((x - alpha * w * w / d).abs() < 1e-13);
            assert!((y - alpha * (1.0 - alpha) * (w - 1.0) * (w - 1.0) / d).abs() < 1e-13);
        }
    }

    #[test]
    fn double_tangent_value() {
        let alpha: f64 = 0.3;
        let sa = alpha.sqrt();
        for b in [Branch::Plus, Branch::Minus] {
            let f = TangentFamily::new(1.5, 0.0, alpha, b).unwrap();
            let w0 = f.w0().unwrap();
            let rc = (1.0 + sa) / (1.0 - sa);
            assert!((w0 - 2.0 * rc / (rc - 1.0)).abs() < 1e-12);
            let phi = f.phi(w0).unwrap();
            assert!((phi - ((1.0 + sa) / 2.0 - 1.0 / 2.5)).abs() < 1e-12);
            assert!((phi - 0.3739).abs() < 1e-4);
        }
    }

    #[test]
    fn charts_agree() {
        for b in [Branch::Plus, Branch::Minus] {
            let f = TangentFamily::new(1.5, 0.4, 0.3, b).unwrap();
            for u in [-3.0, 2.5, 7.0] {
                let p = f.point_chart(Chart::U(u)).unwrap();
                let q = f.point_chart(Chart::T(1.0 / u)).unwrap();
                assert!((p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
                let cu = f.cusp_function(Chart::U(u)).unwrap();
                let ct = f.cusp_function(Chart::T(1.0 / u)).unwrap();
                assert!((ct - u * u * cu).abs() < 1e-9 * (1.0 + ct.abs()));
            }
        }
    }

    #[test]
    fn finite_differences_agree_with_jets() {
        for (r, q, b) in [(10.0, 0.0, Branch::Plus), (1.5, 0.0, Branch::Minus), (1.5, 0.4, Branch::Plus)] {
            let f = TangentFamily::new(r, q, 0.3, b).unwrap();
            for w in [1.3, 2.0, 5.0, -4.0] {
                let a = f.caustic_point(w).unwrap();
                let d = f.caustic_point_fd(w).unwrap();
                assert!((a.0 - d.0).abs() < 1e-6 && (a.1 - d.1).abs() < 1e-6, "{w}: {a:?} {d:?}");
            }
        }
    }

    #[test]
    fn regime_one_w0_line_passes_through_corner() {
        let alpha = 0.3;
        let f = TangentFamily::new(6.0, 0.5, alpha, Branch::Plus).unwrap();
        let w0 = f.w0().unwrap();
        let g = f.geometry;
        let line = g.xi_x - f.slope(w0).unwrap() * g.xi_y - f.phi(w0).unwrap();
        assert!(line.abs() < 1e-12);
        assert!(w0 > 1.0);
    }
}
