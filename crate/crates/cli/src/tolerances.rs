//! Pass thresholds for the verification suites.

/// Caustic points on the arctic ellipse.
pub const ELLIPSE_RESIDUAL: f64 = 1e-12;
/// Contact points `(alpha, 0)` and `(1, 1-alpha)`.
pub const CONTACT: f64 = 1e-10;
/// `exp(-W(z(u))) = u`.
pub const ROUND_TRIP: f64 = 1e-10;
/// Generic chain at [`SMALL_Q`] against the `Q = 0` closed forms.
pub const SMALL_Q_AGREEMENT: f64 = 1e-6;
pub const SMALL_Q: f64 = 1e-8;
/// Relative tolerance of the sextic factorizations and of curve points.
pub const SEXTIC: f64 = 1e-8;
/// Relative deviation of `D(P) / (line^2 A)` from `4/alpha`.
pub const DISCRIMINANT: f64 = 1e-8;
/// Shuffling probabilities against enumeration.
pub const SHUFFLING_EXACT: f64 = 1e-12;
/// Family-wise level, in standard deviations, of the sampling check.
pub const SAMPLING_SIGMAS: f64 = 3.0;
/// Absolute residual of the `eta` quartic.
pub const ETA_RESIDUAL: f64 = 1e-13;
/// Endpoint equations for `a` and `b`.
pub const AB_RESIDUAL: f64 = 1e-10;
/// Mask boundary against the analytic curve, in lattice spacings.
pub const FIGURE_SPACINGS: f64 = 1.0;
pub const FALLBACK_SPACINGS: f64 = 2.0;

pub const ORACLE_SECONDS: f64 = 30.0;
pub const ELLIPSE_SECONDS: f64 = 1.0;
pub const SHUFFLING_SECONDS: f64 = 120.0;
pub const FIGURE_SECONDS: f64 = 60.0;
