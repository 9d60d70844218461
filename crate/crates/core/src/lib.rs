//! Numerical laboratory for composition operators `C_phi f = f ∘ phi` on the
//! weighted Dirichlet scale `D_alpha`.
//!
//! The scale carries the series norm `|a_0|^2 + sum_{n>=1} n^(1-alpha) |a_n|^2`
//! for `alpha >= -1`; it contains `S^2` (alpha = -1), the Dirichlet space
//! (alpha = 0), the Hardy space (alpha = 1, equal norm) and the weighted
//! Bergman spaces (alpha = beta + 2, equivalent norm). The crate provides
//!
//! * weight/norm/inner-product arithmetic of the scale and the complex
//!   interpolation parameter `gamma = (1-t) alpha + t beta` ([`weighted`]),
//! * truncated power series products and the closed-form Taylor data of
//!   linear fractional maps ([`series`]),
//! * the geometry and boundary jets of linear fractional self-maps of the
//!   disk, their rigidity under second order boundary data, and the
//!   compactness / compact-difference verdicts ([`moebius`]),
//! * point- and derivative-evaluation reproducing kernels with series and
//!   closed-form evaluation, plus the adjoint action of `C_phi` on them
//!   ([`kernels`]),
//! * boundary obstruction quantities for compact differences along radial
//!   and `gamma_M` approach paths ([`boundary`]),
//! * finite matrix compressions of `C_phi` in the orthonormalized monomial
//!   basis, their singular values, the adjoint identity on truncations and
//!   the interpolation norm inequality ([`operator`]).
//!
//! Everything is generic over the underlying real scalar through [`Real`];
//! concrete `f64` aliases are exported below.

pub mod boundary;
pub mod emit;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod moebius;
pub mod operator;
pub mod scalar;
pub mod series;
pub mod tolerances;
pub mod weighted;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex scalar over `f64`, the default precision of the lab.
pub type C64 = num_complex::Complex<f64>;
/// Complex scalar over `f32`.
pub type C32 = num_complex::Complex<f32>;
/// Weight index on the `f64` scale.
pub type WeightIndex64 = weighted::WeightIndex<f64>;
/// Truncated coefficient vector over `f64`.
pub type CoefficientVector64 = weighted::CoefficientVector<f64>;
/// Linear fractional map over `f64`.
pub type LinearFractionalMap64 = moebius::LinearFractionalMap<f64>;
/// Symbol (linear fractional or coefficient-backed) over `f64`.
pub type SymbolMap64 = boundary::SymbolMap<f64>;
/// Approach path over `f64`.
pub type ApproachPath64 = boundary::ApproachPath<f64>;
/// Truncated composition operator over `f64`.
pub type TruncatedOperator64 = operator::TruncatedOperator<f64>;
