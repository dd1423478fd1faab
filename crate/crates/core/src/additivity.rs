//! Sampling and property checks for orthogonal additivity, lattice-measure
//! axioms, the nonlinear counterexample family, and effect additivity.
//!
//! Gleason-style constraints only bind a measure on *orthogonal*
//! decompositions. In dimension two that is a weak requirement: measures such
//! as [`odd_power_measure`] satisfy every lattice axiom (range and complement
//! rule) while being nonlinear in the projector, so they cannot be written as
//! `Tr(rho P)`. The checks here make both halves of that contrast observable:
//! Gudder-form functionals always pass orthogonal additivity (the cross term
//! `2c (r.s)` vanishes), while the counterexample family passes the axioms
//! and is left for the fitter to expose as nonlinear.
//!
//! Effects (POVM elements) are the opposite demonstration: trace linearity
//! makes `Tr(rho (E1+E2))` additive even when `E1 E2 != 0`, i.e. additivity
//! over non-orthogonal decompositions is a strictly stronger demand than the
//! lattice axioms impose.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::derive_measure;
use crate::pauli::{
    frobenius_norm, hilbert_schmidt_inner, mat_mul, BlochVector, FourVector, Hermitian2,
};
use crate::rng::SeededRng;
use crate::tol::{GS_REJECT_RATIO, TAU_HERM, TAU_ORTH};

/// Pair of four-vectors with vanishing Euclidean inner product, within
/// [`TAU_ORTH`] relative to the product of norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalPair {
    pub r: FourVector,
    pub s: FourVector,
}

impl OrthogonalPair {
    /// Relative inner product `|r.s| / (|r| |s|)`.
    pub fn relative_inner(&self) -> f64 {
        self.r.dot(&self.s).abs() / (self.r.norm() * self.s.norm())
    }
}

/// Four-vector with standard-normal components and positive norm.
pub fn sample_four_vector(rng: &mut SeededRng) -> FourVector {
    rng.next_four_vector()
}

/// Component of `candidate` orthogonal to `reference` (one Gram-Schmidt
/// step). No normalization is applied.
pub fn project_out(reference: &FourVector, candidate: &FourVector) -> FourVector {
    let coeff = candidate.dot(reference) / reference.dot(reference);
    candidate.sub(&reference.scale(coeff))
}

/// Draws `(r, s)` with `s` the Gram-Schmidt remainder of a fresh draw
/// against `r`. Remainders shorter than [`GS_REJECT_RATIO`] times the
/// candidate are rejected; one re-projection pass then pins the inner
/// product at rounding level, which is what makes the [`TAU_ORTH`] bound
/// hold for every draw and not just typical ones.
pub fn sample_orthogonal_pair(rng: &mut SeededRng) -> OrthogonalPair {
    loop {
        let r = rng.next_four_vector();
        let candidate = rng.next_four_vector();
        let first = project_out(&r, &candidate);
        if first.norm() < GS_REJECT_RATIO * candidate.norm() {
            continue;
        }
        let s = project_out(&r, &first);
        let pair = OrthogonalPair { r, s };
        if s.norm() > 0.0 && pair.relative_inner() <= TAU_ORTH {
            return pair;
        }
    }
}

/// Outcome of a batch additivity or axiom check.
///
/// Serializes as `{samples, max_defect, mean_defect, tol, pass}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdditivityReport {
    pub samples: usize,
    pub max_defect: f64,
    pub mean_defect: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Measures `|f(r+s) - f(r) - f(s)|` over seeded orthogonal pairs.
///
/// Defects are relative, scaled by `max(1, |f(r)| + |f(s)|)`, because
/// values grow quadratically with the norms when the quadratic coefficient
/// is nonzero. Any Gudder-form functional passes: on an orthogonal pair the
/// only surviving cross term is `2c (r.s)`, which the pair construction
/// sends to rounding level.
pub fn check_orthogonal_additivity<F>(f: F, n_pairs: usize, seed: u64, tol: f64) -> AdditivityReport
where
    F: Fn(&FourVector) -> f64,
{
    let mut rng = SeededRng::new(seed);
    let mut max_defect = 0.0f64;
    let mut sum_defect = 0.0f64;
    for _ in 0..n_pairs {
        let pair = sample_orthogonal_pair(&mut rng);
        let at_r = f(&pair.r);
        let at_s = f(&pair.s);
        let at_sum = f(&pair.r.add(&pair.s));
        let scale = 1.0f64.max(at_r.abs() + at_s.abs());
        let defect = (at_sum - at_r - at_s).abs() / scale;
        max_defect = max_defect.max(defect);
        sum_defect += defect;
    }
    AdditivityReport {
        samples: n_pairs,
        max_defect,
        mean_defect: sum_defect / (n_pairs.max(1) as f64),
        tol,
        pass: max_defect <= tol,
    }
}

/// Tag describing where a lattice measure's rule comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureTag {
    Born,
    OddPower { exponent: u32 },
    Custom { label: String },
}

/// Assignment of a real value to every rank-1 projector, addressed by its
/// unit Bloch vector.
///
/// A *valid* lattice measure has values in `[0, 1]` and satisfies the
/// complement rule `p(n) + p(-n) = 1`; [`check_lattice_axioms`] tests both.
/// The rule is a plain function of the unit vector, so externally supplied
/// measures can be plugged in through [`LatticeMeasure::custom`].
#[derive(Clone)]
pub struct LatticeMeasure {
    pub tag: MeasureTag,
    rule: Arc<dyn Fn(&BlochVector) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for LatticeMeasure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LatticeMeasure")
            .field("tag", &self.tag)
            .finish()
    }
}

impl LatticeMeasure {
    /// Born measure anchored to a unit axis: `p(n) = (1 + axis.n)/2`.
    pub fn born(axis: &BlochVector) -> Result<Self> {
        let (functional, _) = derive_measure(axis)?;
        Ok(Self {
            tag: MeasureTag::Born,
            rule: Arc::new(move |n| functional.eval(&FourVector::from_parts(1.0, n.0))),
        })
    }

    /// See [`odd_power_measure`].
    pub fn odd_power(axis: &BlochVector, exponent: u32) -> Result<Self> {
        odd_power_measure(axis, exponent)
    }

    /// Wraps an arbitrary rule. The rule is trusted to be defined for unit
    /// vectors; validity is established by [`check_lattice_axioms`], not
    /// assumed.
    pub fn custom(
        label: impl Into<String>,
        rule: impl Fn(&BlochVector) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            tag: MeasureTag::Custom {
                label: label.into(),
            },
            rule: Arc::new(rule),
        }
    }

    /// Value assigned to the projector with unit Bloch vector `n`.
    pub fn value(&self, n: &BlochVector) -> f64 {
        (self.rule)(n)
    }
}

/// Nonlinear counterexample family `p(n) = (1 + (axis.n)^m)/2` for odd
/// `m >= 3`.
///
/// Every member satisfies the lattice axioms (the odd power flips sign
/// under `n -> -n`, so the complement rule is an algebraic identity), yet
/// the dependence on the projector is nonlinear, so no density operator
/// reproduces it. This family stands in for the known dimension-two
/// counterexamples; an exact external formula can be supplied through
/// [`LatticeMeasure::custom`].
pub fn odd_power_measure(axis: &BlochVector, exponent: u32) -> Result<LatticeMeasure> {
    axis.validate_unit()?;
    if exponent.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "exponent must be odd (complement rule fails for even {exponent})"
        )));
    }
    if exponent < 3 {
        return Err(Error::invalid(format!(
            "exponent must be >= 3 for a nonlinear measure, got {exponent}"
        )));
    }
    let axis = *axis;
    Ok(LatticeMeasure {
        tag: MeasureTag::OddPower { exponent },
        rule: Arc::new(move |n| 0.5 * (1.0 + axis.dot(n).powi(exponent as i32))),
    })
}

/// Checks range (`value in [0, 1]`) and the complement rule
/// (`value(n) + value(-n) = 1`) on seeded unit vectors.
///
/// The per-sample defect is the worst of the complement-rule defect and the
/// amount by which either value leaves `[0, 1]`.
pub fn check_lattice_axioms(
    measure: &LatticeMeasure,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> AdditivityReport {
    fn range_defect(v: f64) -> f64 {
        (-v).max(v - 1.0).max(0.0)
    }

    let mut rng = SeededRng::new(seed);
    let mut max_defect = 0.0f64;
    let mut sum_defect = 0.0f64;
    for _ in 0..n_samples {
        let n = rng.next_unit_bloch();
        let value = measure.value(&n);
        let complement = measure.value(&n.neg());
        let defect = (value + complement - 1.0)
            .abs()
            .max(range_defect(value))
            .max(range_defect(complement));
        max_defect = max_defect.max(defect);
        sum_defect += defect;
    }
    AdditivityReport {
        samples: n_samples,
        max_defect,
        mean_defect: sum_defect / (n_samples.max(1) as f64),
        tol,
        pass: max_defect <= tol,
    }
}

/// Hermitian operator with both eigenvalues in `[0, 1]` (POVM element).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Hermitian2", into = "Hermitian2")]
pub struct Effect {
    op: Hermitian2,
}

impl Effect {
    pub fn new(op: Hermitian2) -> Result<Self> {
        let (lo, hi) = op.eigenvalues();
        if lo < -TAU_HERM || hi > 1.0 + TAU_HERM {
            return Err(Error::NotEffect { lo, hi });
        }
        Ok(Self { op })
    }

    /// Effect with prescribed spectrum `{lo, hi}` along a unit axis:
    /// `((lo+hi) 1 + (hi-lo) n.sigma)/2`.
    pub fn from_spectrum(axis: &BlochVector, lo: f64, hi: f64) -> Result<Self> {
        axis.validate_unit()?;
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(Error::invalid(format!(
                "spectrum ({lo}, {hi}) must satisfy 0 <= lo <= hi <= 1"
            )));
        }
        let r = FourVector::from_parts(lo + hi, axis.scale(hi - lo));
        Effect::new(crate::pauli::pauli_compose(&r)?)
    }

    pub fn operator(&self) -> &Hermitian2 {
        &self.op
    }
}

impl TryFrom<Hermitian2> for Effect {
    type Error = Error;
    fn try_from(op: Hermitian2) -> Result<Self> {
        Effect::new(op)
    }
}

impl From<Effect> for Hermitian2 {
    fn from(e: Effect) -> Hermitian2 {
        e.op
    }
}

/// Outcome of the effect-additivity demonstration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectAdditivityReport {
    /// `Tr(rho (E1+E2)) - Tr(rho E1) - Tr(rho E2)`.
    pub defect: f64,
    /// Hilbert-Schmidt norm of `E1 E2`; nonzero for non-orthogonal effects.
    pub product_norm: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Shows that `Tr(rho .)` is additive over a sum of effects even when the
/// effects do not annihilate each other: the defect is pure floating-point
/// noise, bounded by `tol`, regardless of `E1 E2`.
///
/// `rho` must be a density operator and `e1 + e2` must itself be an effect
/// (largest eigenvalue at most 1).
pub fn check_effect_additivity(
    rho: &Hermitian2,
    e1: &Effect,
    e2: &Effect,
    tol: f64,
) -> Result<EffectAdditivityReport> {
    rho.validate_density()?;
    let sum = e1.op.add(&e2.op);
    let (_, hi) = sum.eigenvalues();
    if hi > 1.0 + TAU_HERM {
        return Err(Error::EffectSumExceedsIdentity { max_eigenvalue: hi });
    }

    let defect = hilbert_schmidt_inner(rho, &sum)
        - hilbert_schmidt_inner(rho, &e1.op)
        - hilbert_schmidt_inner(rho, &e2.op);
    let product_norm = frobenius_norm(&mat_mul(e1.op.matrix(), e2.op.matrix()));
    Ok(EffectAdditivityReport {
        defect,
        product_norm,
        tol,
        pass: defect.abs() <= tol,
    })
}
