//! Numerical tolerances shared across the lab.

/// Slack when validating boundary points, `| |zeta| - 1 | <= UNIMODULAR_TOL`.
pub const UNIMODULAR_TOL: f64 = 1e-9;

/// Strictness margin of the compactness verdict: a self-map whose sup norm
/// lies within this distance of 1 is treated as touching the boundary.
/// The compactness criterion is a strict inequality, so ties go to
/// "not compact".
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Per-coefficient tolerance when comparing maps in normalized form.
pub const MAP_EQ_TOL: f64 = 1e-10;

/// Tangency tolerance of the image-circle boundary contact classification.
pub const TANGENCY_TOL: f64 = 1e-9;

/// A rational evaluation with `|cz + 1|` below this counts as a pole hit.
pub const POLE_TOL: f64 = 1e-14;

/// Default absolute tail target for kernel pairing series.
pub const SERIES_TOL: f64 = 1e-12;

/// Bisection target on the defining equation `|1 - w| / (1 - |w|^2) = M`
/// of the curve `gamma_M`.
pub const CURVE_TOL: f64 = 1e-12;

/// Residual at which an emitted `gamma_M` point is rejected outright.
pub const CURVE_RESIDUAL_MAX: f64 = 1e-9;

/// Default relative tolerance for singular value computations.
pub const SV_TOL: f64 = 1e-13;
