//! Constraint-driven construction of the unique additive probability measure
//! anchored to a pure qubit state, and its evaluation in three equivalent
//! forms.
//!
//! Gudder's theorem says a continuous, orthogonally additive functional on an
//! inner-product space has the form `f(r) = c (r.r) + k.r`. Treating that
//! family as given, a probability measure anchored to the state with Bloch
//! vector `n` is pinned down by three boundary requirements on the
//! coefficient space:
//!
//! 1. the unit of measure fits exactly once into itself, `f[(1, n)] = 1`;
//! 2. it never fits into the orthogonal state, `f[(1, -n)] = 0`;
//! 3. it also vanishes on `(-1, n)`, which is Euclidean-orthogonal to
//!    `(1, n)` even though it labels no projector.
//!
//! The first two force `2c + k0 = 1/2` and `n.k = 1/2`; requiring values in
//! `[0, 1]` on every projector slice vector `(1, m)` bounds `|k| cos(theta)`
//! by `1/2` while `cos(theta)` sweeps `[-1, 1]`, so `|k| = 1/2` and the
//! spatial part of `k` must be parallel to `n`: `k = n/2`. The third
//! requirement then separates `c` from `k0`: `c = 0`, `k0 = 1/2`. The result
//! is the linear functional `f[(r0, r)] = (r0 + n.r)/2`, whose restriction to
//! slice vectors is the Born rule `(1 + n_phi . n_psi)/2 = |<phi|psi>|^2 =
//! Tr(P_phi P_psi)`.
//!
//! Off the projector slice the functional may be negative; it is an inner
//! product, not a clamped probability, and nothing here clamps it.
//!
//! [`derive_measure`] records every intermediate constraint in a
//! [`DerivationTrace`] and cross-checks the analytic solution against a
//! numerically solved linear system built from the same three boundary rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::min_norm_least_squares;
use crate::pauli::{
    hilbert_schmidt_inner, pauli_compose, projector_from_bloch, BlochVector, FourVector,
};
use crate::tol::{TAU_EQ, TOL_RANK};

/// Parameters `(c, k)` of the functional `f(r) = c (r.r) + k.r`.
///
/// A *derived measure* is the special case `c = 0`, `k0 = 1/2`, `|k| = 1/2`
/// produced by [`derive_measure`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GudderFunctional {
    pub c: f64,
    pub k: FourVector,
}

impl GudderFunctional {
    pub fn new(c: f64, k: FourVector) -> Self {
        Self { c, k }
    }

    /// Evaluates `c (r.r) + k.r`.
    pub fn eval(&self, r: &FourVector) -> f64 {
        self.c * r.dot(r) + self.k.dot(r)
    }

    /// Whether the parameters satisfy the derived-measure constraints within
    /// [`TAU_EQ`].
    pub fn is_derived_measure(&self) -> bool {
        let spatial = self.k.spatial();
        let spatial_norm =
            (spatial[0] * spatial[0] + spatial[1] * spatial[1] + spatial[2] * spatial[2]).sqrt();
        self.c.abs() <= TAU_EQ
            && (self.k.time() - 0.5).abs() <= TAU_EQ
            && (spatial_norm - 0.5).abs() <= TAU_EQ
    }
}

/// Evaluates a functional of the Gudder form on a four-vector.
pub fn gudder_eval(f: &GudderFunctional, r: &FourVector) -> f64 {
    f.eval(r)
}

/// Intermediate values of the constraint chain that fixes the measure.
///
/// For a completed derivation: `sum_constraint = dot_constraint = k_norm =
/// k0 = 1/2` and `c = 0`. Serializes with one named field per step so the
/// chain can be golden-tested.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivationTrace {
    /// Anchor state's Bloch vector.
    pub n_phi: BlochVector,
    /// Value of `2c + k0` fixed by the two slice boundary conditions.
    pub sum_constraint: f64,
    /// Value of `n.k` fixed by the same pair.
    pub dot_constraint: f64,
    /// `|k|`, pinned by the range argument over the projector slice.
    pub k_norm: f64,
    /// Quadratic coefficient after the off-slice condition; zero.
    pub c: f64,
    /// Time component of `k` after the off-slice condition; one half.
    pub k0: f64,
}

/// Runs the constraint chain for the anchor state `n_phi` and returns the
/// derived measure together with its trace.
///
/// Steps, each recorded in the trace:
///
/// * boundary pair `f[(1, n)] = 1`, `f[(1, -n)] = 0` gives
///   `2c + k0 = 1/2` (half-sum) and `n.k = 1/2` (half-difference);
/// * the range requirement `f[(1, m)] in [0, 1]` for all unit `m` forces
///   `|k| = 1/2`, and with `n.k = 1/2` (Cauchy-Schwarz saturated) the
///   spatial part is `k = n/2`;
/// * the off-slice condition `f[(-1, n)] = 0` reads `2c - k0 + 1/2 = 0`,
///   which combined with `2c + k0 = 1/2` yields `c = 0`, `k0 = 1/2`.
///
/// The same three boundary rows are then solved numerically as a
/// minimum-norm least-squares system; the minimum-norm completion is exactly
/// the parallel-spatial-part solution, so any disagreement beyond [`TAU_EQ`]
/// reports an internal error.
pub fn derive_measure(n_phi: &BlochVector) -> Result<(GudderFunctional, DerivationTrace)> {
    n_phi.validate_unit()?;

    // Boundary requirements on the anchor state and its complement.
    let value_at_state = 1.0;
    let value_at_orthogonal = 0.0;
    let value_at_reflected = 0.0;

    let sum_constraint = 0.5 * (value_at_state + value_at_orthogonal); // 2c + k0
    let dot_constraint = 0.5 * (value_at_state - value_at_orthogonal); // n.k

    // sup over unit m of |k . m| must not exceed 1/2, while n.k already
    // equals 1/2: the supremum is attained, |k| = 1/2, direction n.
    let k_norm = dot_constraint;
    let k_spatial = n_phi.scale(k_norm);

    // Off-slice anchor separates c from k0: 2c - k0 = value - n.k.
    let two_c_minus_k0 = value_at_reflected - dot_constraint;
    let c = 0.25 * (sum_constraint + two_c_minus_k0);
    let k0 = 0.5 * (sum_constraint - two_c_minus_k0);

    let functional = GudderFunctional::new(c, FourVector::from_parts(k0, k_spatial));
    let trace = DerivationTrace {
        n_phi: *n_phi,
        sum_constraint,
        dot_constraint,
        k_norm,
        c,
        k0,
    };

    cross_check_derivation(n_phi, &functional)?;
    Ok((functional, trace))
}

/// Independent numerical route: minimum-norm least squares over the three
/// boundary rows in the full parameter space `(c, k0, k1, k2, k3)`.
fn cross_check_derivation(n_phi: &BlochVector, analytic: &GudderFunctional) -> Result<()> {
    let state = FourVector::from_parts(1.0, n_phi.0);
    let orthogonal = FourVector::from_parts(1.0, n_phi.neg().0);
    let reflected = FourVector::from_parts(-1.0, n_phi.0);

    let rows: Vec<[f64; 5]> = [state, orthogonal, reflected]
        .iter()
        .map(|r| {
            let rr = r.dot(r);
            [rr, r.0[0], r.0[1], r.0[2], r.0[3]]
        })
        .collect();
    let ls = min_norm_least_squares(&rows, &[1.0, 0.0, 0.0], TOL_RANK)?;

    let analytic_params = [
        analytic.c,
        analytic.k.0[0],
        analytic.k.0[1],
        analytic.k.0[2],
        analytic.k.0[3],
    ];
    let max_gap = ls
        .solution
        .iter()
        .zip(analytic_params)
        .map(|(num, ana)| (num - ana).abs())
        .fold(0.0f64, f64::max);
    if max_gap > TAU_EQ {
        return Err(Error::Internal {
            reason: format!(
                "numeric constraint solve disagrees with analytic derivation by {max_gap:.3e}"
            ),
        });
    }
    Ok(())
}

/// Born probability of projecting state `n_psi` onto `n_phi`, evaluated
/// through the derived measure on the slice vector `(1, n_psi)`.
///
/// Equal (bitwise) to `gudder_eval(derived, (1, n_psi))` and, within
/// [`TAU_EQ`], to `(1 + n_phi . n_psi)/2`, `|<phi|psi>|^2`, and
/// `Tr(P_phi P_psi)`.
pub fn born_probability(n_phi: &BlochVector, n_psi: &BlochVector) -> Result<f64> {
    n_phi.validate_unit()?;
    n_psi.validate_unit()?;
    let functional = GudderFunctional::new(0.0, FourVector::from_parts(0.5, n_phi.scale(0.5)));
    Ok(functional.eval(&FourVector::from_parts(1.0, n_psi.0)))
}

/// Closed linear form `(r0 + n.r)/2` of a derived measure, with `n = 2k`.
///
/// Only legal for derived measures; a nonzero quadratic coefficient is a
/// contract violation. Agrees with [`gudder_eval`] within [`TAU_EQ`].
pub fn measure_linear_form(f_phi: &GudderFunctional, r: &FourVector) -> Result<f64> {
    if f_phi.c != 0.0 {
        return Err(Error::NotDerivedMeasure { c: f_phi.c });
    }
    let n = [2.0 * f_phi.k.0[1], 2.0 * f_phi.k.0[2], 2.0 * f_phi.k.0[3]];
    let [r0, r1, r2, r3] = r.0;
    Ok(0.5 * (r0 + (n[0] * r1 + n[1] * r2 + n[2] * r3)))
}

/// Trace form `Tr(P_phi^dag R)` of the measure, with `R` the operator
/// composed from `r`. The adjoint is applied explicitly even though `P_phi`
/// is Hermitian, matching the inner-product reading of the measure.
pub fn measure_trace_form(n_phi: &BlochVector, r: &FourVector) -> Result<f64> {
    let projector = projector_from_bloch(n_phi)?;
    let operator = pauli_compose(r)?;
    // Tr(A^dag B) conjugates its first argument.
    Ok(hilbert_schmidt_inner(&projector, &operator))
}
