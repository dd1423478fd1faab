//! Target grammar shared by `check`, `fit`, and `sample`, plus the seeded
//! sample generators.
//!
//! Grammar:
//!
//! * `born` or `born:X,Y,Z`: the derived measure anchored to a unit Bloch
//!   vector (default z axis);
//! * `gudder:C,K0,K1,K2,K3`: an arbitrary functional of the Gudder form;
//! * `counterexample` or `counterexample:M`: the odd-power lattice measure
//!   with exponent `M` (default 3), anchored to the z axis.

use bornlab_core::{
    derive_measure, odd_power_measure, BlochVector, FourVector, GudderFunctional, LatticeMeasure,
    MeasureSample, SeededRng,
};

use crate::CliError;

#[derive(Debug, Clone)]
pub enum TargetSpec {
    Born { axis: BlochVector },
    Gudder { functional: GudderFunctional },
    Counterexample { exponent: u32 },
}

impl TargetSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let (head, args) = match text.split_once(':') {
            Some((head, args)) => (head, Some(args)),
            None => (text, None),
        };
        match head {
            "born" => {
                let axis = match args {
                    None => BlochVector::z_axis(),
                    Some(args) => BlochVector(parse_numbers::<3>(args)?),
                };
                Ok(TargetSpec::Born { axis })
            }
            "gudder" => {
                let args = args.ok_or_else(|| {
                    CliError::usage("gudder target needs parameters: gudder:C,K0,K1,K2,K3")
                })?;
                let p = parse_numbers::<5>(args)?;
                Ok(TargetSpec::Gudder {
                    functional: GudderFunctional::new(p[0], FourVector([p[1], p[2], p[3], p[4]])),
                })
            }
            "counterexample" => {
                let exponent = match args {
                    None => 3,
                    Some(args) => args.trim().parse::<u32>().map_err(|e| {
                        CliError::usage(format!("bad counterexample exponent {args:?}: {e}"))
                    })?,
                };
                Ok(TargetSpec::Counterexample { exponent })
            }
            other => Err(CliError::usage(format!(
                "unknown target {other:?}; expected born[:X,Y,Z], gudder:C,K0,K1,K2,K3, \
                 or counterexample[:M]"
            ))),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            TargetSpec::Born { axis } => {
                format!("born:{},{},{}", axis.0[0], axis.0[1], axis.0[2])
            }
            TargetSpec::Gudder { functional } => format!(
                "gudder:{},{},{},{},{}",
                functional.c,
                functional.k.0[0],
                functional.k.0[1],
                functional.k.0[2],
                functional.k.0[3]
            ),
            TargetSpec::Counterexample { exponent } => format!("counterexample:{exponent}"),
        }
    }

    pub fn functional(&self) -> Result<Option<GudderFunctional>, CliError> {
        match self {
            TargetSpec::Born { axis } => Ok(Some(derive_measure(axis)?.0)),
            TargetSpec::Gudder { functional } => Ok(Some(*functional)),
            TargetSpec::Counterexample { .. } => Ok(None),
        }
    }

    pub fn lattice_measure(&self) -> Result<Option<LatticeMeasure>, CliError> {
        match self {
            TargetSpec::Born { axis } => Ok(Some(LatticeMeasure::born(axis)?)),
            TargetSpec::Counterexample { exponent } => {
                Ok(Some(odd_power_measure(&BlochVector::z_axis(), *exponent)?))
            }
            TargetSpec::Gudder { .. } => Ok(None),
        }
    }

    /// Axis used for the off-slice anchor sample `(-1, axis)`.
    fn anchor_axis(&self) -> Option<BlochVector> {
        match self {
            TargetSpec::Born { axis } => Some(*axis),
            TargetSpec::Gudder { functional } => {
                let spatial = functional.k.spatial();
                let norm =
                    (spatial[0] * spatial[0] + spatial[1] * spatial[1] + spatial[2] * spatial[2])
                        .sqrt();
                if norm > 1e-12 {
                    Some(BlochVector([
                        spatial[0] / norm,
                        spatial[1] / norm,
                        spatial[2] / norm,
                    ]))
                } else {
                    Some(BlochVector::z_axis())
                }
            }
            TargetSpec::Counterexample { .. } => None,
        }
    }
}

pub fn parse_numbers<const N: usize>(text: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(CliError::usage(format!(
            "expected {N} comma-separated numbers, got {} in {text:?}",
            parts.len()
        )));
    }
    let mut out = [0.0f64; N];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| CliError::usage(format!("bad number {part:?}: {e}")))?;
        if !slot.is_finite() {
            return Err(CliError::usage(format!("non-finite number {part:?}")));
        }
    }
    Ok(out)
}

/// Where the sampled four-vectors live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SupportKind {
    /// Standard-normal four-vectors spanning the full space.
    General,
    /// Projector slice vectors `(1, n)` with `n` uniform on the sphere.
    Slice,
    /// Slice vectors plus one off-slice anchor `(-1, axis)` as the final
    /// sample, which restores full parameter identifiability.
    SliceAnchored,
}

impl SupportKind {
    pub fn describe(&self) -> &'static str {
        match self {
            SupportKind::General => "general",
            SupportKind::Slice => "slice",
            SupportKind::SliceAnchored => "slice-anchored",
        }
    }
}

/// Draws `count` measure samples of `target` on `support`.
pub fn generate_samples(
    target: &TargetSpec,
    support: SupportKind,
    count: usize,
    seed: u64,
) -> Result<Vec<MeasureSample>, CliError> {
    if count == 0 {
        return Err(CliError::usage("samples must be >= 1"));
    }
    let mut rng = SeededRng::new(seed);

    if let TargetSpec::Counterexample { .. } = target {
        if support != SupportKind::Slice {
            return Err(CliError::usage(
                "lattice measures are defined on projectors only; use --support slice",
            ));
        }
        let measure = target
            .lattice_measure()?
            .expect("counterexample is a lattice measure");
        return Ok((0..count)
            .map(|_| {
                let n = rng.next_unit_bloch();
                MeasureSample {
                    r: FourVector::from_parts(1.0, n.0),
                    value: measure.value(&n),
                }
            })
            .collect());
    }

    let functional = target
        .functional()?
        .expect("born and gudder targets are functionals");
    let draws = match support {
        SupportKind::SliceAnchored => count.saturating_sub(1),
        _ => count,
    };
    let mut samples: Vec<MeasureSample> = (0..draws)
        .map(|_| {
            let r = match support {
                SupportKind::General => rng.next_four_vector(),
                _ => FourVector::from_parts(1.0, rng.next_unit_bloch().0),
            };
            MeasureSample {
                r,
                value: functional.eval(&r),
            }
        })
        .collect();

    if support == SupportKind::SliceAnchored {
        let axis = target
            .anchor_axis()
            .expect("functional targets have an anchor axis");
        let anchor = FourVector::from_parts(-1.0, axis.0);
        samples.push(MeasureSample {
            r: anchor,
            value: functional.eval(&anchor),
        });
    }
    Ok(samples)
}
