//! Sampled branches of the arctic curve with their contact points, interior
//! tangencies and cusps.

use alloc::vec::Vec;

use super::regime::{Regime, RegimeParams};
use super::tangent::{Branch, Chart, TangentFamily};
use crate::fmath::{cos, hypot, sin, sqrt};
use crate::geometry::ScaledGeometry;
use crate::Result;

const PI: f64 = core::f64::consts::PI;
const EDGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchLabel {
    /// Regime I: both signs give the same ellipse.
    Ellipse,
    Plus,
    Minus,
}

/// Where a special point sits. Coordinates have their origin at the
/// top-right corner, `x` growing leftwards and `y` downwards, so the cut
/// occupies `x > xi_x, y < xi_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
    Right,
    Left,
    CutBottom,
    CutRight,
    Interior,
}

impl Side {
    pub fn classify(x: f64, y: f64, g: &ScaledGeometry) -> Side {
        if y.abs() < EDGE_TOL {
            Side::Top
        } else if (y - 1.0).abs() < EDGE_TOL {
            Side::Bottom
        } else if x.abs() < EDGE_TOL {
            Side::Right
        } else if (x - 1.0).abs() < EDGE_TOL {
            Side::Left
        } else if (y - g.xi_y).abs() < EDGE_TOL && x >= g.xi_x - EDGE_TOL {
            Side::CutBottom
        } else if (x - g.xi_x).abs() < EDGE_TOL && y <= g.xi_y + EDGE_TOL {
            Side::CutRight
        } else {
            Side::Interior
        }
    }

    pub fn is_boundary(self) -> bool {
        self != Side::Interior
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialKind {
    /// The branch touches the domain boundary.
    Contact,
    /// The branch touches a line through a side of the cut, inside the domain.
    Tangency,
    Cusp,
    /// Point of the line tangent to both branches.
    DoubleTangent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialPoint {
    pub kind: SpecialKind,
    pub side: Side,
    pub u: f64,
    pub w: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub u: f64,
    pub w: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveBranch {
    pub label: BranchLabel,
    pub samples: Vec<CurveSample>,
    pub special: Vec<SpecialPoint>,
    /// Samples dropped because the family is not real there.
    pub gaps: usize,
}

impl CurveBranch {
    pub fn contacts(&self) -> impl Iterator<Item = &SpecialPoint> {
        self.special.iter().filter(|p| p.kind == SpecialKind::Contact)
    }

    pub fn cusps(&self) -> impl Iterator<Item = &SpecialPoint> {
        self.special.iter().filter(|p| p.kind == SpecialKind::Cusp)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    pub params: RegimeParams,
    pub geometry: ScaledGeometry,
    pub w0: f64,
    pub branches: Vec<CurveBranch>,
}

impl CurveSet {
    pub fn contact_count(&self) -> usize {
        self.branches.iter().map(|b| b.contacts().count()).sum()
    }

    pub fn cusp_count(&self) -> usize {
        self.branches.iter().map(|b| b.cusps().count()).sum()
    }
}

fn angle(i: usize, n: usize) -> f64 {
    -0.5 * PI + PI * i as f64 / (n - 1) as f64
}

fn special_at(f: &TangentFamily, chart: Chart, kind: SpecialKind) -> Option<SpecialPoint> {
    let (x, y) = f.point_chart(chart).ok()?;
    let side = Side::classify(x, y, &f.geometry);
    let kind = match kind {
        SpecialKind::Contact | SpecialKind::Tangency if side.is_boundary() => SpecialKind::Contact,
        SpecialKind::Contact | SpecialKind::Tangency => SpecialKind::Tangency,
        k => k,
    };
    let alpha = f.alpha();
    Some(SpecialPoint { kind, side, u: chart.u(), w: chart.w(alpha), x, y })
}

fn find_cusps(f: &TangentFamily, grid: usize) -> Vec<SpecialPoint> {
    let g = |th: f64| f.cusp_function(Chart::from_angle(th)).ok();
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..grid {
        let th = angle(i, grid);
        let Some(v) = g(th) else {
            prev = None;
            continue;
        };
        if let Some((pth, pv)) = prev {
            if (pv > 0.0) != (v > 0.0) {
                let (mut lo, mut hi, mut flo) = (pth, th, pv);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    match g(mid) {
                        Some(m) if (m > 0.0) == (flo > 0.0) => {
                            lo = mid;
                            flo = m;
                        }
                        Some(_) => hi = mid,
                        None => break,
                    }
                }
                if let Some(p) = special_at(f, Chart::from_angle(0.5 * (lo + hi)), SpecialKind::Cusp) {
                    out.push(p);
                }
            }
        }
        prev = Some((th, v));
    }
    out
}

fn sample_branch(f: &TangentFamily, label: BranchLabel, n: usize) -> CurveBranch {
    let alpha = f.alpha();
    let mut samples = Vec::with_capacity(n);
    let mut gaps = 0;
    for i in 0..n {
        let chart = Chart::from_angle(angle(i, n));
        match f.point_chart(chart) {
            Ok((x, y)) => samples.push(CurveSample { u: chart.u(), w: chart.w(alpha), x, y }),
            Err(_) => gaps += 1,
        }
    }
    let mut special: Vec<SpecialPoint> = [Chart::U(0.0), Chart::U(1.0), Chart::U(alpha), Chart::T(0.0)]
        .into_iter()
        .filter_map(|c| special_at(f, c, SpecialKind::Contact))
        .collect();
    if label != BranchLabel::Ellipse {
        special.extend(find_cusps(f, n.max(4000)));
        if let Some(u) = f.psi.double_tangent_u() {
            special.extend(special_at(f, Chart::from_u(u), SpecialKind::DoubleTangent));
        }
    }
    CurveBranch { label, samples, special, gaps }
}

/// Samples both branches over `u = tan(theta)`, `theta` in `[-pi/2, pi/2]`,
/// i.e. over all real `w` and `w = inf`. Regime I yields a single ellipse.
pub fn curve_branches(r: f64, q: f64, alpha: f64, n_samples: usize) -> Result<CurveSet> {
    let n = n_samples.max(2);
    let plus = TangentFamily::new(r, q, alpha, Branch::Plus)?;
    let w0 = plus.w0()?;
    let branches = if plus.params.regime == Regime::I {
        alloc::vec![sample_branch(&plus, BranchLabel::Ellipse, n)]
    } else {
        let minus = TangentFamily::new(r, q, alpha, Branch::Minus)?;
        alloc::vec![sample_branch(&plus, BranchLabel::Plus, n), sample_branch(&minus, BranchLabel::Minus, n)]
    };
    Ok(CurveSet { params: plus.params, geometry: plus.geometry, w0, branches })
}

/// The arctic ellipse `(1-x-y)^2/(1-alpha) + (x-y)^2/alpha = 1` as a closed
/// polyline of `n` points.
pub fn arctic_ellipse(alpha: f64, n: usize) -> CurveBranch {
    let (c, s) = (sqrt(1.0 - alpha), sqrt(alpha));
    let n = n.max(3);
    let samples = (0..=n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            let (p, q) = (c * cos(t), s * sin(t));
            CurveSample { u: f64::NAN, w: f64::NAN, x: 0.5 * (1.0 - p + q), y: 0.5 * (1.0 - p - q) }
        })
        .collect();
    CurveBranch { label: BranchLabel::Ellipse, samples, special: Vec::new(), gaps: 0 }
}

/// Distance from `(x, y)` to the polyline through the samples of a branch.
pub fn distance_to_branch(b: &CurveBranch, x: f64, y: f64) -> f64 {
    let mut best = f64::INFINITY;
    for s in b.samples.windows(2) {
        let (ax, ay, bx, by) = (s[0].x, s[0].y, s[1].x, s[1].y);
        let (dx, dy) = (bx - ax, by - ay);
        let l2 = dx * dx + dy * dy;
        let t = if l2 > 0.0 { (((x - ax) * dx + (y - ay) * dy) / l2).clamp(0.0, 1.0) } else { 0.0 };
        best = best.min(hypot(x - ax - t * dx, y - ay - t * dy));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_ellipse() {
        let e = arctic_ellipse(0.3, 500);
        for s in &e.samples {
            let (a, b) = (1.0 - s.x - s.y, s.x - s.y);
            assert!((a * a / 0.7 + b * b / 0.3 - 1.0).abs() < 1e-12);
        }
        assert!(distance_to_branch(&e, 0.3, 0.0) < 1e-5);
    }

    #[test]
    fn regime_one_single_ellipse() {
        let c = curve_branches(4.0, 0.0, 0.3, 400).unwrap();
        assert_eq!(c.branches.len(), 1);
        assert_eq!(c.contact_count(), 4);
        assert_eq!(c.cusp_count(), 0);
        for s in &c.branches[0].samples {
            let (a, b) = (1.0 - s.x - s.y, s.x - s.y);
            assert!((a * a / 0.7 + b * b / 0.3 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn six_contacts_two_cusps() {
        let c = curve_branches(1.5, 0.0, 0.3, 2000).unwrap();
        assert_eq!(c.contact_count(), 6);
        assert_eq!(c.cusp_count(), 2);
        let minus = &c.branches[1];
        assert_eq!(minus.label, BranchLabel::Minus);
        assert_eq!(minus.cusps().count(), 2);
        let mut us: Vec<f64> = minus.cusps().map(|p| p.u).collect();
        us.sort_by(f64::total_cmp);
        assert!((us[0] + 4.0515).abs() < 1e-3 && (us[1] + 0.07405).abs() < 1e-4);
        let sides: Vec<Side> = c.branches.iter().flat_map(|b| b.contacts().map(|p| p.side)).collect();
        for s in [Side::Top, Side::Bottom, Side::Left, Side::Right, Side::CutBottom, Side::CutRight] {
            assert_eq!(sides.iter().filter(|&&t| t == s).count(), 1, "{s:?}");
        }
    }

    #[test]
    fn branches_join_at_infinity() {
        let c = curve_branches(1.5, 0.0, 0.3, 101).unwrap();
        let (p, m) = (&c.branches[0].samples, &c.branches[1].samples);
        let d = |a: &CurveSample, b: &CurveSample| hypot(a.x - b.x, a.y - b.y);
        assert!(d(&p[0], m.last().unwrap()) < 1e-12);
        assert!(d(&m[0], p.last().unwrap()) < 1e-12);
    }

    #[test]
    fn samples_stay_in_the_domain() {
        for (r, q) in [(1.5, 0.0), (1.2, 0.0), (2.0, 0.7), (3.0, 0.1)] {
            let c = curve_branches(r, q, 0.3, 1000).unwrap();
            let g = c.geometry;
            for b in &c.branches {
                for s in &b.samples {
                    assert!((-1e-9..=1.0 + 1e-9).contains(&s.x) && (-1e-9..=1.0 + 1e-9).contains(&s.y));
                    assert!(!(s.x > g.xi_x + 1e-9 && s.y < g.xi_y - 1e-9), "{r} {q} {s:?}");
                }
            }
        }
    }
}
