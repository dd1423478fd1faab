//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Validation and computation failures.
///
/// Invalid norms and broken operator structure are always reported as
/// errors; nothing is silently renormalized.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("operator is not Hermitian: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("vector is not unit length: norm {norm} (tolerance {tol:.3e})")]
    NotUnit { norm: f64, tol: f64 },

    #[error("ket is not normalized: |alpha|^2+|beta|^2 = {norm_sq} (tolerance {tol:.3e})")]
    NotNormalized { norm_sq: f64, tol: f64 },

    #[error("operator is not a projector: {reason}")]
    NotProjector { reason: String },

    #[error("operator is not a density operator: {reason}")]
    NotDensity { reason: String },

    #[error("operator is not an effect: eigenvalues ({lo}, {hi}) leave [0, 1]")]
    NotEffect { lo: f64, hi: f64 },

    #[error("effect sum exceeds the identity: largest eigenvalue {max_eigenvalue}")]
    EffectSumExceedsIdentity { max_eigenvalue: f64 },

    #[error("non-finite component encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("functional is not a derived measure: quadratic coefficient c = {c}")]
    NotDerivedMeasure { c: f64 },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("orthogonalization failed to converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("internal cross-check failed: {reason}")]
    Internal { reason: String },

    #[error("malformed input: {reason}")]
    Parse { reason: String },
}

impl Error {
    pub(crate) fn invalid(reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            reason: reason.into(),
        }
    }
}
