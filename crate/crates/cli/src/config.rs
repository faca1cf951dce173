use arctic_core::geometry::scale_geometry;
use arctic_core::{LGeometry, ScaledGeometry};
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Lattice sizes or continuum ratios, never both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Lattice { n: usize, r: usize, s: usize },
    Scaled { r: f64, q: f64 },
}

impl Geometry {
    pub fn from_flags(
        n: Option<usize>,
        r: Option<usize>,
        s: Option<usize>,
        big_r: Option<f64>,
        big_q: Option<f64>,
    ) -> Result<Self> {
        let lattice = n.is_some() || r.is_some() || s.is_some();
        let scaled = big_r.is_some() || big_q.is_some();
        match (lattice, scaled) {
            (true, true) => Err(CliError::Config("give either --N/--r/--s or --R/--Q, not both".into())),
            (false, false) => Err(CliError::Config("a geometry is required (--N --r --s or --R --Q)".into())),
            (true, false) => {
                let n = n.ok_or_else(|| CliError::Config("--N is required".into()))?;
                Ok(Geometry::Lattice { n, r: r.unwrap_or(n), s: s.unwrap_or(0) })
            }
            (false, true) => {
                let r = big_r.ok_or_else(|| CliError::Config("--R is required".into()))?;
                Ok(Geometry::Scaled { r, q: big_q.unwrap_or(0.0) })
            }
        }
    }

    pub fn lattice(&self) -> Result<LGeometry> {
        match *self {
            Geometry::Lattice { n, r, s } => Ok(LGeometry::new(n, r, s)?),
            Geometry::Scaled { .. } => Err(CliError::Config("this command needs lattice sizes --N --r --s".into())),
        }
    }

    /// Continuum ratios; `None` for a lattice without a cut.
    pub fn scaled(&self) -> Result<Option<ScaledGeometry>> {
        match *self {
            Geometry::Lattice { s: 0, .. } => Ok(None),
            Geometry::Lattice { .. } => Ok(Some(scale_geometry(&self.lattice()?)?)),
            Geometry::Scaled { r, q } => Ok(Some(ScaledGeometry::from_ratios(r, q)?)),
        }
    }
}

/// Everything a subcommand depends on; echoed in JSON metadata.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub alpha: f64,
    pub geometry: Geometry,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub eps_const: f64,
    pub max_n: usize,
}

impl RunConfig {
    pub fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(CliError::Config(format!("--alpha must lie in [0,1], got {}", self.alpha)));
        }
        if !(self.eps_const.is_finite() && self.eps_const > 0.0) {
            return Err(CliError::Config(format!("--eps-const must be positive, got {}", self.eps_const)));
        }
        if let Geometry::Lattice { n, .. } = self.geometry {
            if n > self.max_n {
                return Err(CliError::Config(format!("N = {n} exceeds the cap {} (raise --max-n)", self.max_n)));
            }
        }
        Ok(())
    }
}

/// Accepts a decimal or a ratio such as `1/3`.
pub fn parse_alpha(s: &str) -> std::result::Result<f64, String> {
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|e| format!("{e}"))?;
            let q: f64 = q.trim().parse().map_err(|e| format!("{e}"))?;
            p / q
        }
        None => s.trim().parse().map_err(|e| format!("{e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_forms() {
        assert_eq!(parse_alpha("1/4"), Ok(0.25));
        assert_eq!(parse_alpha("0.3"), Ok(0.3));
        assert!(parse_alpha("1/0").is_err());
        assert!(parse_alpha("x").is_err());
    }

    #[test]
    fn geometry_is_exclusive() {
        assert!(Geometry::from_flags(Some(5), Some(3), Some(1), Some(1.5), None).is_err());
        assert!(Geometry::from_flags(None, None, None, None, None).is_err());
        assert_eq!(Geometry::from_flags(Some(5), None, None, None, None).unwrap(), Geometry::Lattice { n: 5, r: 5, s: 0 });
        assert_eq!(Geometry::from_flags(None, None, None, Some(2.0), None).unwrap(), Geometry::Scaled { r: 2.0, q: 0.0 });
    }
}
