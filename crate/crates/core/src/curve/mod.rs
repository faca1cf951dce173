//! Arctic curves: regimes, resolvents, the tangent family and its caustic,
//! and the implicit sextic at `Q = 0`.

pub mod branches;
pub mod discriminant;
pub mod jet;
pub mod regime;
pub mod resolvent;
pub mod sextic;
pub mod tangent;

pub use jet::Jet2;
pub use regime::{
    ab_q0, ab_residuals, classify_regime, critical_r, eta_equation, eta_sign_changes, kl_chain, slope_m,
    solve_eta, solve_eta_ab, u_of_w, w_of_u, Classification, KlChain, Regime, RegimeParams,
};
pub use resolvent::{
    exp_minus_resolvent, exp_minus_resolvent_at, inverse_resolvent, principal_s, resolvent, resolvent_log_form,
    zgen, zpm, Sheet, SpectralPoint,
};
pub use tangent::{caustic_t, caustic_u, Branch, Chart, PsiForm, TangentFamily};
pub use branches::{
    arctic_ellipse, curve_branches, distance_to_branch, BranchLabel, CurveBranch, CurveSample, CurveSet, Side, SpecialKind, SpecialPoint,
};
pub use sextic::{beta_one_form, beta_zero_form, ImplicitSexticQ0};
pub use discriminant::{
    discriminant_check, double_tangent_line, p_coefficients, quartic_discriminant, DiscriminantReport,
    DiscriminantSample,
};
