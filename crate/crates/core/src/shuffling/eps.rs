use core::ops::{Add, Div, Mul};

/// `coeff * eps^order` for an infinitesimal `eps > 0`. Zero weights are
/// replaced by `eps` so that every ratio in the recursion stays finite and
/// the limit `eps -> 0` is taken only at the end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsWeight {
    pub coeff: f64,
    pub order: i32,
}

impl EpsWeight {
    pub const ONE: EpsWeight = EpsWeight { coeff: 1.0, order: 0 };
    pub const EPS: EpsWeight = EpsWeight { coeff: 1.0, order: 1 };

    pub fn new(coeff: f64) -> Self {
        if coeff == 0.0 {
            Self::EPS
        } else {
            EpsWeight { coeff, order: 0 }
        }
    }

    /// Value at `eps = 0`; only meaningful for non-negative orders.
    pub fn limit(self) -> f64 {
        match self.order {
            0 => self.coeff,
            o if o > 0 => 0.0,
            _ => f64::INFINITY,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        EpsWeight { coeff: self.coeff * c, order: self.order }
    }
}

impl Mul for EpsWeight {
    type Output = EpsWeight;
    fn mul(self, o: EpsWeight) -> EpsWeight {
        EpsWeight { coeff: self.coeff * o.coeff, order: self.order + o.order }
    }
}

impl Div for EpsWeight {
    type Output = EpsWeight;
    fn div(self, o: EpsWeight) -> EpsWeight {
        EpsWeight { coeff: self.coeff / o.coeff, order: self.order - o.order }
    }
}

impl Add for EpsWeight {
    type Output = EpsWeight;
    fn add(self, o: EpsWeight) -> EpsWeight {
        match self.order.cmp(&o.order) {
            core::cmp::Ordering::Less => self,
            core::cmp::Ordering::Greater => o,
            core::cmp::Ordering::Equal => EpsWeight { coeff: self.coeff + o.coeff, order: self.order },
        }
    }
}
