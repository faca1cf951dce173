use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Lattice sizes violate `1 <= r <= N`, `0 <= s <= N` or a module precondition.
    InvalidGeometry(String),
    /// A real parameter is outside its domain.
    InvalidParameter(String),
    /// Input exceeds a resource guard.
    SizeGuard { what: &'static str, limit: usize, got: usize },
    /// Evaluation at a pole of a closed-form expression.
    Pole(String),
    /// A square root of a negative quantity was requested.
    NegativeRadicand { context: &'static str, value: f64 },
    /// A root finder could not bracket or converge.
    NoRoot(String),
    /// The weighted dimer model has no configuration of positive weight.
    ZeroTotalWeight,
    /// The quantity is identically zero and cannot be normalised.
    Degenerate(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGeometry(m) => write!(f, "invalid geometry: {m}"),
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::SizeGuard { what, limit, got } => {
                write!(f, "{what} = {got} exceeds the guard {limit}")
            }
            Error::Pole(m) => write!(f, "pole: {m}"),
            Error::NegativeRadicand { context, value } => {
                write!(f, "negative radicand {value:e} in {context}")
            }
            Error::NoRoot(m) => write!(f, "root finding failed: {m}"),
            Error::ZeroTotalWeight => write!(f, "zero total weight"),
            Error::Degenerate(m) => write!(f, "degenerate: {m}"),
        }
    }
}

impl core::error::Error for Error {}
