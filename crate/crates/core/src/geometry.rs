//! Lattice and continuum geometry of the L-shaped domain.

use alloc::format;

use crate::fmath::sqrt;
use crate::{Error, Result};

/// An `N x N` square with the `s x (N - r)` rectangle in the top-left corner
/// removed. The removed block consists of the vertices with column index
/// `j > r` (counted from the right, 1-based) and row index `k <= s` (counted
/// from the top).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LGeometry {
    pub n: usize,
    pub r: usize,
    pub s: usize,
}

impl LGeometry {
    pub fn new(n: usize, r: usize, s: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGeometry("N must be positive".into()));
        }
        if r == 0 || r > n {
            return Err(Error::InvalidGeometry(format!("need 1 <= r <= N, got r={r}, N={n}")));
        }
        if s > n {
            return Err(Error::InvalidGeometry(format!("need s <= N, got s={s}, N={n}")));
        }
        Ok(LGeometry { n, r, s })
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n, 0)
    }

    /// `N - r - s` when non-negative.
    pub fn q(&self) -> Option<usize> {
        self.n.checked_sub(self.r + self.s)
    }

    /// Whether the 0-based vertex `(j, k)` lies in the removed corner.
    #[inline]
    pub fn is_cut(&self, j: usize, k: usize) -> bool {
        j >= self.r && k < self.s
    }

    /// Row `k` of vertical edges below the `k`-th row carries `k` up arrows,
    /// and in the top `s` rows only `r` columns are available, so DWBC
    /// states exist exactly when `s <= r`.
    pub fn admits_states(&self) -> bool {
        self.s <= self.r
    }

    /// Number of columns in which the single up arrow of the first row of
    /// vertical edges may sit.
    pub fn top_width(&self) -> usize {
        if self.s == 0 {
            self.n
        } else {
            self.r
        }
    }

    /// Number of vertices in the removed corner.
    pub fn cut_size(&self) -> usize {
        self.s * (self.n - self.r)
    }
}

/// Continuum geometry: `R = r/s`, `Q = (N-r-s)/s` and the bottom-right
/// vertex `(xi_x, xi_y)` of the cut rectangle in units of `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledGeometry {
    pub r: f64,
    pub q: f64,
    pub xi_x: f64,
    pub xi_y: f64,
}

impl ScaledGeometry {
    pub fn from_ratios(r: f64, q: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 1.0) {
            return Err(Error::InvalidParameter(format!("R must be >= 1, got {r}")));
        }
        if !(q.is_finite() && q >= 0.0) {
            return Err(Error::InvalidParameter(format!("Q must be >= 0, got {q}")));
        }
        let d = r + q + 1.0;
        Ok(ScaledGeometry { r, q, xi_x: r / d, xi_y: 1.0 / d })
    }

    /// `beta = (R-1)/((R+1) sqrt(alpha))`, defined for `Q = 0`.
    pub fn beta(&self, alpha: f64) -> Option<f64> {
        if self.q != 0.0 || !(alpha > 0.0 && alpha < 1.0) {
            return None;
        }
        Some((self.r - 1.0) / ((self.r + 1.0) * sqrt(alpha)))
    }
}

/// `R = r/s`, `Q = (N-r-s)/s`.
pub fn scale_geometry(geom: &LGeometry) -> Result<ScaledGeometry> {
    if geom.s == 0 {
        return Err(Error::InvalidGeometry("scaling needs s >= 1".into()));
    }
    let q = geom
        .q()
        .ok_or_else(|| Error::InvalidGeometry(format!("scaling needs r+s <= N, got {geom:?}")))?;
    if geom.r < geom.s {
        return Err(Error::InvalidGeometry(format!("no states for r < s, got {geom:?}")));
    }
    let s = geom.s as f64;
    ScaledGeometry::from_ratios(geom.r as f64 / s, q as f64 / s)
}

/// Inverse of [`ScaledGeometry::beta`].
pub fn r_from_beta(beta: f64, alpha: f64) -> f64 {
    let t = sqrt(alpha) * beta;
    (1.0 + t) / (1.0 - t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_geometry() {
        let g = scale_geometry(&LGeometry::new(300, 168, 132).unwrap()).unwrap();
        assert!((g.r - 14.0 / 11.0).abs() < 1e-15);
        assert_eq!(g.q, 0.0);
    }

    #[test]
    fn generic_geometry() {
        let g = scale_geometry(&LGeometry::new(7, 4, 2).unwrap()).unwrap();
        assert_eq!(g.r, 2.0);
        assert_eq!(g.q, 0.5);
        assert!((g.xi_x - 4.0 / 7.0).abs() < 1e-15);
        assert!((g.xi_y - 2.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_cut() {
        let g = ScaledGeometry::from_ratios(1.0, 0.7).unwrap();
        assert_eq!(g.xi_x, g.xi_y);
        assert!((g.xi_x - 1.0 / 2.7).abs() < 1e-15);
    }

    #[test]
    fn beta_round_trip() {
        let g = ScaledGeometry::from_ratios(1.5, 0.0).unwrap();
        let b = g.beta(0.3).unwrap();
        assert!((b - 0.365148371670111).abs() < 1e-12);
        assert!((r_from_beta(b, 0.3) - 1.5).abs() < 1e-14);
        assert!(ScaledGeometry::from_ratios(1.5, 0.1).unwrap().beta(0.3).is_none());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(LGeometry::new(3, 0, 1).is_err());
        assert!(LGeometry::new(3, 4, 1).is_err());
        assert!(LGeometry::new(3, 2, 4).is_err());
        assert!(scale_geometry(&LGeometry::new(3, 3, 0).unwrap()).is_err());
        assert!(scale_geometry(&LGeometry::new(4, 3, 2).unwrap()).is_err());
    }
}
