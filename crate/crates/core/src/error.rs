//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the lab. Diagnostic payloads are stored
/// as `f64` regardless of the working scalar type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("weight index must satisfy alpha >= -1, got {alpha}")]
    InvalidWeightIndex { alpha: f64 },

    #[error("coefficient vector must hold at least one coefficient")]
    EmptyCoefficients,

    #[error("truncation order must be at least 1")]
    ZeroTruncation,

    #[error(
        "interpolation requires alpha < beta and t strictly inside (0, 1): \
         alpha = {alpha}, beta = {beta}, t = {t}"
    )]
    InvalidInterpolation { alpha: f64, beta: f64, t: f64 },

    #[error("linear fractional map is degenerate (ad - bc vanishes)")]
    DegenerateMap,

    #[error("linear fractional map needs d != 0 in (az + b)/(cz + d)")]
    ZeroDenominator,

    #[error("pole -1/c with modulus {pole_abs} does not lie outside the closed disk")]
    PoleInsideDisk { pole_abs: f64 },

    #[error("evaluation too close to the pole: |cz + 1| = {denom_abs}")]
    PoleHit { denom_abs: f64 },

    #[error("point must lie on the unit circle, got modulus {modulus}")]
    NotUnimodular { modulus: f64 },

    #[error("point must lie in the open unit disk, got modulus {modulus}")]
    OutsideDisk { modulus: f64 },

    #[error("image point has modulus {modulus} >= 1, kernel undefined there")]
    ImageOnBoundary { modulus: f64 },

    #[error("map is not a self-map of the disk: sup norm {sup_norm}")]
    NotSelfMap { sup_norm: f64 },

    #[error("operation is stated only for alpha in {{0, -1}}, got {alpha}")]
    UnsupportedAlpha { alpha: f64 },

    #[error("approach path is empty: {reason}")]
    EmptyPath { reason: String },

    #[error("invalid path specification: {reason}")]
    InvalidPath { reason: String },

    #[error(
        "eigenvalue iteration did not converge after {sweeps} sweeps, \
         off-diagonal norm {off_diagonal}"
    )]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("operand shapes differ: {reason}")]
    ShapeMismatch { reason: String },

    #[error("cannot reconstruct a map from this boundary data: {reason}")]
    UnsolvableData { reason: String },

    #[error("invalid map serialization: {0}")]
    MapJson(String),
}
