//! Centralized numerical tolerances.
//!
//! Every quantity in this crate is a low-degree polynomial of O(1) inputs
//! evaluated in f64, so absolute tolerances far above machine epsilon are
//! safe for validation while still catching genuine contract violations.

/// Hermiticity defect allowed on operator entries (absolute).
pub const TAU_HERM: f64 = 1e-9;

/// Norm defect allowed on unit Bloch vectors and normalized kets (absolute).
pub const TAU_UNIT: f64 = 1e-9;

/// Agreement tolerance between algebraically equal expressions (absolute).
pub const TAU_EQ: f64 = 1e-9;

/// Inner product bound for an orthogonal pair, relative to the product of
/// the two norms. Achievable because the sampler re-projects the remainder.
pub const TAU_ORTH: f64 = 1e-12;

/// Rank threshold: singular values above `TOL_RANK` times the largest one
/// count toward the design rank.
pub const TOL_RANK: f64 = 1e-10;

/// Largest |c| still classified as linear.
pub const TAU_C: f64 = 1e-6;

/// Largest rms residual still classified as an exact Gudder-form fit.
/// Sized for noise-free synthetic samples; override for noisy data.
pub const TAU_FIT: f64 = 1e-6;

/// Default relative tolerance for orthogonal-additivity checks.
pub const TOL_ADDITIVITY: f64 = 1e-8;

/// Default absolute tolerance for lattice-axiom and effect-additivity checks.
pub const TOL_AXIOMS: f64 = 1e-12;

/// Gram-Schmidt remainder smaller than this fraction of the candidate norm
/// triggers a resample; guards against catastrophic cancellation.
pub const GS_REJECT_RATIO: f64 = 1e-6;
