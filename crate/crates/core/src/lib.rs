//! Verification laboratory for qubit probability measures.
//!
//! The crate implements, as small exact-arithmetic building blocks:
//!
//! * [`pauli`]: the dictionary between 2x2 Hermitian operators, kets,
//!   Bloch vectors, and real four-vectors of Pauli coefficients, with the
//!   Euclidean and Hilbert-Schmidt inner products;
//! * [`measure`]: the constraint chain that pins the unique orthogonally
//!   additive probability measure anchored to a pure state (the Born rule),
//!   with its linear and trace forms and a recorded derivation trace;
//! * [`additivity`]: seeded samplers and batch checks for orthogonal
//!   additivity, the lattice-measure axioms, the nonlinear odd-power
//!   counterexample family, and the effect-additivity demonstration;
//! * [`fit`]: least-squares recovery of Gudder-form parameters from
//!   sampled values, rank diagnostics on restricted supports, verdicts
//!   (`BornLinear` / `GudderQuadratic` / `NonGudder`), and density-operator
//!   extraction;
//! * [`rng`]: the documented SplitMix64 stream behind every sampler, so
//!   identical seeds reproduce identical results everywhere.
//!
//! All operations are pure functions of their inputs; values are immutable
//! after construction and safe to use concurrently. Invalid norms and broken
//! operator structure are reported as errors; nothing is silently
//! renormalized.
//!
//! # Quick start
//!
//! ```
//! use bornlab_core::{born_probability, derive_measure, BlochVector, FourVector};
//!
//! // The unique additive measure anchored to a pure state is linear:
//! // c = 0, k = (1/2, n/2).
//! let axis = BlochVector::new(0.6, 0.0, 0.8);
//! let (measure, trace) = derive_measure(&axis)?;
//! assert_eq!(measure.c, 0.0);
//! assert_eq!(trace.k0, 0.5);
//!
//! // On projector slice vectors it is the Born probability...
//! let p = born_probability(&axis, &BlochVector::z_axis())?;
//! assert_eq!(p, 0.9);
//! // ...and on general four-vectors it acts as an inner product, which may
//! // be negative off the slice.
//! let off_slice = measure.eval(&FourVector::new(-1.0, 0.0, 0.0, 1.0));
//! assert!(off_slice < 0.0);
//! # Ok::<(), bornlab_core::Error>(())
//! ```

pub mod additivity;
pub mod error;
pub mod fit;
mod linalg;
pub mod measure;
pub mod pauli;
pub mod rng;
pub mod tol;

pub use additivity::{
    check_effect_additivity, check_lattice_axioms, check_orthogonal_additivity, odd_power_measure,
    sample_four_vector, sample_orthogonal_pair, AdditivityReport, Effect, EffectAdditivityReport,
    LatticeMeasure, MeasureTag, OrthogonalPair,
};
pub use error::{Error, Result};
pub use fit::{
    build_design_row, classify, extract_density, fit_gudder, samples_from_csv, samples_from_json,
    samples_to_csv, samples_to_json, ExtractedDensity, FitReport, GudderFit, MeasureSample,
    SampleFile, Verdict,
};
pub use measure::{
    born_probability, derive_measure, gudder_eval, measure_linear_form, measure_trace_form,
    DerivationTrace, GudderFunctional,
};
pub use pauli::{
    bloch_from_projector, euclidean_inner, hilbert_schmidt_inner, ket_to_operator,
    overlap_probability, pauli_compose, pauli_decompose, projector_from_bloch, BlochVector,
    FourVector, Hermitian2, Ket2,
};
pub use rng::SeededRng;

// Complex scalar used throughout the operator types.
pub use num_complex::Complex64;
