//! Free-fermion weights `w1 = w2 = sqrt(1-alpha)`, `w3 = w4 = sqrt(alpha)`,
//! `w5 = w6 = 1`, and the six vertex types.

use alloc::format;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fmath::sqrt;
use crate::{Error, Result};

/// The single weight parameter, exact when given as a ratio.
#[derive(Debug, Clone, PartialEq)]
pub enum Alpha {
    Exact(BigRational),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeFermionWeights {
    pub alpha: Alpha,
}

impl FreeFermionWeights {
    pub fn exact(alpha: BigRational) -> Result<Self> {
        if alpha.is_negative() || alpha > BigRational::one() {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} not in [0,1]")));
        }
        Ok(FreeFermionWeights { alpha: Alpha::Exact(alpha) })
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Self::exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} not in [0,1]")));
        }
        Ok(FreeFermionWeights { alpha: Alpha::Float(alpha) })
    }

    pub fn alpha_f64(&self) -> f64 {
        match &self.alpha {
            Alpha::Exact(a) => a.to_f64().unwrap_or(f64::NAN),
            Alpha::Float(a) => *a,
        }
    }

    pub fn exact_alpha(&self) -> Option<&BigRational> {
        match &self.alpha {
            Alpha::Exact(a) => Some(a),
            Alpha::Float(_) => None,
        }
    }

    pub fn weight(&self, t: VertexType) -> f64 {
        t.weight(self.alpha_f64())
    }
}

/// Vertex types in the usual numbering; arrows are listed as
/// (left edge, right edge, bottom edge, top edge).
///
/// | type | left | right | bottom | top |
/// |------|------|-------|--------|-----|
/// | 1    | →    | →     | ↑      | ↑   |
/// | 2    | ←    | ←     | ↓      | ↓   |
/// | 3    | →    | →     | ↓      | ↓   |
/// | 4    | ←    | ←     | ↑      | ↑   |
/// | 5    | →    | ←     | ↓      | ↑   |
/// | 6    | ←    | →     | ↑      | ↓   |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum VertexType {
    One = 1,
    Two = 2,
    Three = 3,
    Four = 4,
    Five = 5,
    Six = 6,
}

impl VertexType {
    pub const ALL: [VertexType; 6] = [
        VertexType::One,
        VertexType::Two,
        VertexType::Three,
        VertexType::Four,
        VertexType::Five,
        VertexType::Six,
    ];

    /// `(left points right, right points right, bottom points up, top points up)`.
    pub fn arrows(self) -> (bool, bool, bool, bool) {
        match self {
            VertexType::One => (true, true, true, true),
            VertexType::Two => (false, false, false, false),
            VertexType::Three => (true, true, false, false),
            VertexType::Four => (false, false, true, true),
            VertexType::Five => (true, false, false, true),
            VertexType::Six => (false, true, true, false),
        }
    }

    pub fn from_arrows(left_right: bool, right_right: bool, bottom_up: bool, top_up: bool) -> Option<Self> {
        use VertexType::*;
        match (left_right, right_right, bottom_up, top_up) {
            (true, true, true, true) => Some(One),
            (false, false, false, false) => Some(Two),
            (true, true, false, false) => Some(Three),
            (false, false, true, true) => Some(Four),
            (true, false, false, true) => Some(Five),
            (false, true, true, false) => Some(Six),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize - 1
    }

    pub fn weight(self, alpha: f64) -> f64 {
        match self {
            VertexType::One | VertexType::Two => sqrt(1.0 - alpha),
            VertexType::Three | VertexType::Four => sqrt(alpha),
            VertexType::Five | VertexType::Six => 1.0,
        }
    }

    /// Whether the horizontal edge to the right of the vertex points left.
    pub fn right_edge_points_left(self) -> bool {
        !self.arrows().1
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

/// `coeff * sqrt(1 - alpha)^(odd as 0 or 1)`, the exact form of a partition
/// function on a domain whose type-1/2 vertex count has fixed parity.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd {
    pub coeff: BigRational,
    pub odd: bool,
}

impl Surd {
    pub fn to_f64(&self, alpha: f64) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        if self.odd {
            c * sqrt(1.0 - alpha)
        } else {
            c
        }
    }

    /// `self * (1-alpha)^(m/2)` for the given exact alpha.
    pub fn times_half_power(&self, one_minus_alpha: &BigRational, m: usize) -> Surd {
        let total = m + self.odd as usize;
        let mut coeff = self.coeff.clone();
        for _ in 0..total / 2 {
            coeff *= one_minus_alpha;
        }
        Surd { coeff, odd: total % 2 == 1 }
    }

    pub fn is_rational(&self) -> bool {
        !self.odd || self.coeff.is_zero()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.odd {
            write!(f, "{}*sqrt(1-alpha)", self.coeff)
        } else {
            write!(f, "{}", self.coeff)
        }
    }
}

/// A quantity computed exactly when alpha is rational, in doubles otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Approx(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_fermion_condition() {
        for a in [0.0, 0.1, 0.3, 0.5, 0.9, 1.0] {
            let w = |t: VertexType| t.weight(a);
            let lhs = w(VertexType::One) * w(VertexType::Two) + w(VertexType::Three) * w(VertexType::Four);
            assert!((lhs - w(VertexType::Five) * w(VertexType::Six)).abs() < 1e-15);
        }
    }

    #[test]
    fn arrows_round_trip_and_ice_rule() {
        for t in VertexType::ALL {
            let (l, r, b, u) = t.arrows();
            assert_eq!(VertexType::from_arrows(l, r, b, u), Some(t));
            let inward = l as u8 + (!r) as u8 + b as u8 + (!u) as u8;
            assert_eq!(inward, 2);
        }
    }

    #[test]
    fn surd_half_powers() {
        let oma = BigRational::new(2.into(), 3.into());
        let s = Surd { coeff: BigRational::one(), odd: false };
        let t = s.times_half_power(&oma, 3);
        assert!(t.odd);
        assert_eq!(t.coeff, oma);
        assert!((t.to_f64(1.0 / 3.0) - (2.0f64 / 3.0).powf(1.5)).abs() < 1e-15);
    }

    #[test]
    fn rejects_alpha_outside_unit_interval() {
        assert!(FreeFermionWeights::ratio(4, 3).is_err());
        assert!(FreeFermionWeights::float(-0.1).is_err());
        assert!(FreeFermionWeights::ratio(1, 0).is_err());
    }
}
