//! Least-squares identification of Gudder-form parameters from sampled
//! measure values, rank diagnostics, and Born/Gudder/nonlinear
//! classification.
//!
//! The regression basis for `f(r) = c (r.r) + k.r` is the five-entry row
//! `[r.r, r0, r1, r2, r3]`. On samples restricted to the projector slice
//! `(1, n)` the first basis entry is identically twice the second, so the
//! design rank drops to four and only the combination `2c + k0` is
//! determined, which is the numerical face of the fact that slice values
//! alone cannot separate the quadratic coefficient from `k0`. A single
//! off-slice sample such as `(-1, n)` restores rank five.
//!
//! Sample files and fit reports have versioned JSON encodings; samples also
//! round-trip through a one-line-per-sample CSV form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{min_norm_least_squares, LeastSquares};
use crate::pauli::{pauli_compose, FourVector, Hermitian2};
use crate::tol::TAU_EQ;

/// Schema identifier written into sample files.
pub const SAMPLE_SCHEMA: &str = "bornlab/samples";
/// Schema identifier written into fit reports.
pub const FIT_REPORT_SCHEMA: &str = "bornlab/fit-report";
/// Current version of both encodings.
pub const SCHEMA_VERSION: u32 = 1;

/// One empirical observation of a measure: the four-vector it was applied
/// to and the value it returned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureSample {
    pub r: FourVector,
    pub value: f64,
}

/// Versioned envelope for sample files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleFile {
    pub schema: String,
    pub version: u32,
    pub samples: Vec<MeasureSample>,
}

impl SampleFile {
    pub fn new(samples: Vec<MeasureSample>) -> Self {
        Self {
            schema: SAMPLE_SCHEMA.to_string(),
            version: SCHEMA_VERSION,
            samples,
        }
    }
}

/// Serializes samples as the versioned JSON envelope.
pub fn samples_to_json(samples: &[MeasureSample]) -> String {
    serde_json::to_string_pretty(&SampleFile::new(samples.to_vec()))
        .expect("sample serialization cannot fail")
}

/// Reads samples from either the versioned envelope or a bare JSON array.
pub fn samples_from_json(text: &str) -> Result<Vec<MeasureSample>> {
    if let Ok(file) = serde_json::from_str::<SampleFile>(text) {
        if file.schema != SAMPLE_SCHEMA {
            return Err(Error::Parse {
                reason: format!("unexpected sample schema {:?}", file.schema),
            });
        }
        if file.version != SCHEMA_VERSION {
            return Err(Error::Parse {
                reason: format!("unsupported sample file version {}", file.version),
            });
        }
        return Ok(file.samples);
    }
    serde_json::from_str::<Vec<MeasureSample>>(text).map_err(|e| Error::Parse {
        reason: format!("not a sample file: {e}"),
    })
}

/// CSV form: header row `r0,r1,r2,r3,value`, one sample per line.
pub fn samples_to_csv(samples: &[MeasureSample]) -> String {
    let mut out = String::from("r0,r1,r2,r3,value\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.r.0[0], s.r.0[1], s.r.0[2], s.r.0[3], s.value
        ));
    }
    out
}

pub fn samples_from_csv(text: &str) -> Result<Vec<MeasureSample>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse {
        reason: "empty CSV".to_string(),
    })?;
    if header.trim() != "r0,r1,r2,r3,value" {
        return Err(Error::Parse {
            reason: format!("unexpected CSV header {header:?}"),
        });
    }
    let mut samples = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::Parse {
                reason: format!(
                    "line {}: expected 5 fields, got {}",
                    lineno + 2,
                    fields.len()
                ),
            });
        }
        let mut numbers = [0.0f64; 5];
        for (slot, field) in numbers.iter_mut().zip(&fields) {
            *slot = field.trim().parse::<f64>().map_err(|e| Error::Parse {
                reason: format!("line {}: {e}", lineno + 2),
            })?;
        }
        samples.push(MeasureSample {
            r: FourVector([numbers[0], numbers[1], numbers[2], numbers[3]]),
            value: numbers[4],
        });
    }
    Ok(samples)
}

/// Regression basis `[r.r, r0, r1, r2, r3]` for the parameters
/// `(c, k0, k1, k2, k3)`.
pub fn build_design_row(r: &FourVector) -> [f64; 5] {
    [r.dot(r), r.0[0], r.0[1], r.0[2], r.0[3]]
}

/// Fitted parameters with residual and rank diagnostics, before
/// classification.
#[derive(Debug, Clone)]
pub struct GudderFit {
    pub c_hat: f64,
    pub k_hat: FourVector,
    pub rms_residual: f64,
    pub max_residual: f64,
    /// Singular values above `tol_rank` times the largest one.
    pub design_rank: usize,
    /// Singular values of the design matrix, descending.
    pub singular_values: [f64; 5],
    /// Right singular vectors spanning the numerical null space.
    pub null_space: Vec<[f64; 5]>,
    /// Human-readable statement of which parameter combinations the sample
    /// support determines.
    pub identifiable_note: String,
}

/// Minimum-norm least-squares fit of the Gudder form to `samples`.
///
/// Needs at least five samples. `tol_rank` is the singular-value ratio
/// below which a direction counts as undetermined; on rank-deficient
/// supports the minimum-norm (pseudo-inverse) solution is reported and the
/// note names the determined combinations instead of pretending all five
/// parameters are known.
pub fn fit_gudder(samples: &[MeasureSample], tol_rank: f64) -> Result<GudderFit> {
    if samples.len() < 5 {
        return Err(Error::TooFewSamples {
            needed: 5,
            got: samples.len(),
        });
    }
    for s in samples {
        if !s.r.is_finite() || !s.value.is_finite() {
            return Err(Error::NonFinite {
                context: "measure sample",
            });
        }
    }

    let rows: Vec<[f64; 5]> = samples.iter().map(|s| build_design_row(&s.r)).collect();
    let rhs: Vec<f64> = samples.iter().map(|s| s.value).collect();
    let ls = min_norm_least_squares(&rows, &rhs, tol_rank)?;

    let mut sum_sq = 0.0f64;
    let mut max_residual = 0.0f64;
    for (row, value) in rows.iter().zip(&rhs) {
        let predicted: f64 = row.iter().zip(&ls.solution).map(|(a, x)| a * x).sum();
        let residual = (predicted - value).abs();
        max_residual = max_residual.max(residual);
        sum_sq += residual * residual;
    }
    let rms_residual = (sum_sq / samples.len() as f64).sqrt();

    let c_hat = ls.solution[0];
    let k_hat = FourVector([
        ls.solution[1],
        ls.solution[2],
        ls.solution[3],
        ls.solution[4],
    ]);
    let identifiable_note = identifiability_note(&ls, c_hat, k_hat.time());

    Ok(GudderFit {
        c_hat,
        k_hat,
        rms_residual,
        max_residual,
        design_rank: ls.rank,
        singular_values: ls.singular_values,
        null_space: ls.null_space,
        identifiable_note,
    })
}

fn identifiability_note(ls: &LeastSquares, c_hat: f64, k0_hat: f64) -> String {
    if ls.rank == 5 {
        return "all five parameters (c, k0, k1, k2, k3) are identifiable on this support"
            .to_string();
    }

    // Slice supports have the single null direction (1, -2, 0, 0, 0)/sqrt(5):
    // the first design column (r.r = 2) is twice the second (r0 = 1).
    let slice_direction = ls.null_space.iter().any(|w| {
        let along = (w[0] - 2.0 * w[1]) / 5.0f64.sqrt();
        let spatial_leak = w[2].abs().max(w[3].abs()).max(w[4].abs());
        along.abs() > 1.0 - 1e-6 && spatial_leak < 1e-6
    });
    if ls.rank == 4 && slice_direction {
        format!(
            "slice-restricted support (rank 4): c and k0 cannot be separated; only the \
             combination 2c + k0 = {:.12} and the spatial components of k are determined. \
             One off-slice sample such as (-1, n) restores rank 5",
            2.0 * c_hat + k0_hat
        )
    } else {
        format!(
            "rank-{} support: {} parameter direction(s) are undetermined; minimum-norm \
             values reported",
            ls.rank,
            ls.null_space.len()
        )
    }
}

/// Classification of a fitted measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Linear functional: `|c_hat| <= tau_c` and residuals at fit level.
    BornLinear,
    /// Exact Gudder form with a genuine quadratic part.
    GudderQuadratic,
    /// Irreducible residual: not of the Gudder form on this support.
    NonGudder,
}

/// Operator `rho = pauli_compose(2 k)` reproducing a linear fit as
/// `k.r = Tr(rho^dag R_r)`, with physicality diagnostics.
///
/// A fitted `k` need not give a physical state, so failures are flagged,
/// never thrown.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractedDensity {
    pub operator: Hermitian2,
    pub trace: f64,
    pub min_eigenvalue: f64,
    /// True when trace is 1 and the spectrum is nonnegative, within
    /// [`TAU_EQ`].
    pub physical: bool,
}

/// Builds the candidate density operator for a linear measure `k.r`.
///
/// The Pauli coefficients of `rho` are `2 k_mu`, so the Parseval relation
/// turns `k.r` into the Hilbert-Schmidt pairing `Tr(rho^dag R_r)`.
pub fn extract_density(k_hat: &FourVector) -> Result<ExtractedDensity> {
    let operator = pauli_compose(&k_hat.scale(2.0))?;
    let trace = operator.trace();
    let (min_eigenvalue, _) = operator.eigenvalues();
    Ok(ExtractedDensity {
        operator,
        trace,
        min_eigenvalue,
        physical: (trace - 1.0).abs() <= TAU_EQ && min_eigenvalue >= -TAU_EQ,
    })
}

/// Completed fit report.
///
/// Invariants: `BornLinear` implies `|c_hat| <= tau_c`, residuals at fit
/// level, and a present `rho_hat`; `GudderQuadratic` implies fit-level
/// residuals with `|c_hat| > tau_c`; `NonGudder` implies residuals above
/// the fit tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport {
    pub schema: String,
    pub version: u32,
    pub c_hat: f64,
    pub k_hat: FourVector,
    pub rms_residual: f64,
    pub max_residual: f64,
    pub design_rank: usize,
    pub identifiable_note: String,
    pub verdict: Verdict,
    pub rho_hat: Option<ExtractedDensity>,
}

/// Applies the verdict thresholds to a fit; `BornLinear` verdicts also
/// extract the candidate density operator.
pub fn classify(fit: &GudderFit, tau_c: f64, tau_fit: f64) -> FitReport {
    let verdict = if fit.rms_residual > tau_fit {
        Verdict::NonGudder
    } else if fit.c_hat.abs() > tau_c {
        Verdict::GudderQuadratic
    } else {
        Verdict::BornLinear
    };
    let rho_hat = match verdict {
        // The fitted k is finite by construction, so extraction cannot fail.
        Verdict::BornLinear => extract_density(&fit.k_hat).ok(),
        _ => None,
    };
    FitReport {
        schema: FIT_REPORT_SCHEMA.to_string(),
        version: SCHEMA_VERSION,
        c_hat: fit.c_hat,
        k_hat: fit.k_hat,
        rms_residual: fit.rms_residual,
        max_residual: fit.max_residual,
        design_rank: fit.design_rank,
        identifiable_note: fit.identifiable_note.clone(),
        verdict,
        rho_hat,
    }
}
