//! Correspondence between 2x2 Hermitian operators, kets, Bloch vectors, and
//! real four-vectors of Pauli coefficients.
//!
//! Every 2x2 Hermitian operator `A` expands in the Pauli basis
//! `{s0 = 1, sx, sy, sz}` as `A = (1/2) sum_mu r_mu s_mu` with real
//! coefficients `r_mu = Tr(s_mu A)`. The coefficient vectors
//! `r = (r0, r1, r2, r3)` span a real four-dimensional inner-product space;
//! its Euclidean inner product equals twice the Hilbert-Schmidt inner product
//! `Tr(A^dag B)` of the corresponding operators (Parseval relation for the
//! Pauli basis, which has norm sqrt(2) per element).
//!
//! Unit Bloch vectors label rank-1 projectors through
//! `P = (1/2)(1 + n . sigma)`; the four-vector of such a projector is
//! `(1, n)`. Norm requirements are enforced, never silently repaired.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol::{TAU_HERM, TAU_UNIT};

#[inline]
pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Product of two raw 2x2 complex matrices.
pub(crate) fn mat_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[c64(0.0, 0.0); 2]; 2];
    for (i, row) in a.iter().enumerate() {
        for j in 0..2 {
            out[i][j] = row[0] * b[0][j] + row[1] * b[1][j];
        }
    }
    out
}

pub(crate) fn frobenius_norm(m: &[[Complex64; 2]; 2]) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// A validated 2x2 complex Hermitian operator.
///
/// The constructor enforces, within [`TAU_HERM`]: real diagonal entries and
/// `a10 = conj(a01)`. Values are immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian2 {
    m: [[Complex64; 2]; 2],
}

impl Hermitian2 {
    /// Validates hermiticity of `entries` (row-major) within [`TAU_HERM`].
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        for row in &entries {
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite {
                        context: "Hermitian2 entries",
                    });
                }
            }
        }
        let defect = entries[0][0]
            .im
            .abs()
            .max(entries[1][1].im.abs())
            .max((entries[1][0] - entries[0][1].conj()).norm());
        if defect > TAU_HERM {
            return Err(Error::NotHermitian {
                defect,
                tol: TAU_HERM,
            });
        }
        Ok(Self { m: entries })
    }

    /// Builds an exactly Hermitian operator from a real diagonal and the
    /// upper off-diagonal entry.
    pub fn from_parts(a00: f64, a01: Complex64, a11: f64) -> Self {
        Self {
            m: [[c64(a00, 0.0), a01], [a01.conj(), c64(a11, 0.0)]],
        }
    }

    pub fn identity() -> Self {
        Self::from_parts(1.0, c64(0.0, 0.0), 1.0)
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[i][j]
    }

    /// Conjugate transpose. Coincides with the operator itself up to the
    /// hermiticity tolerance, but is applied explicitly wherever a formula
    /// calls for the adjoint.
    pub fn dagger(&self) -> Self {
        Self {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    /// Real part of the trace (the imaginary part is bounded by the
    /// hermiticity tolerance).
    pub fn trace(&self) -> f64 {
        self.m[0][0].re + self.m[1][1].re
    }

    /// Entrywise sum; Hermitian structure is preserved exactly.
    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.m;
        for (row, other_row) in m.iter_mut().zip(&other.m) {
            for (z, o) in row.iter_mut().zip(other_row) {
                *z += *o;
            }
        }
        Self { m }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut m = self.m;
        for row in &mut m {
            for z in row.iter_mut() {
                *z *= factor;
            }
        }
        Self { m }
    }

    /// Eigenvalues `(min, max)` from the closed form for 2x2 Hermitian
    /// matrices.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + self.m[0][1].norm_sqr()).sqrt();
        (mid - rad, mid + rad)
    }

    /// Largest entrywise deviation from idempotence, `max |(P^2 - P)_ij|`.
    pub fn idempotence_defect(&self) -> f64 {
        let sq = mat_mul(&self.m, &self.m);
        let mut defect: f64 = 0.0;
        for (sq_row, row) in sq.iter().zip(&self.m) {
            for (a, b) in sq_row.iter().zip(row) {
                defect = defect.max((a - b).norm());
            }
        }
        defect
    }

    /// Checks that the operator is a rank-1 projector: idempotent and of
    /// unit trace, both within [`TAU_HERM`].
    pub fn validate_projector(&self) -> Result<()> {
        let trace_defect = (self.trace() - 1.0).abs();
        if trace_defect > TAU_HERM {
            return Err(Error::NotProjector {
                reason: format!("trace defect {trace_defect:.3e}"),
            });
        }
        let idem = self.idempotence_defect();
        if idem > TAU_HERM {
            return Err(Error::NotProjector {
                reason: format!("idempotence defect {idem:.3e}"),
            });
        }
        Ok(())
    }

    /// Checks positivity and unit trace within [`TAU_HERM`].
    pub fn validate_density(&self) -> Result<()> {
        let trace_defect = (self.trace() - 1.0).abs();
        if trace_defect > TAU_HERM {
            return Err(Error::NotDensity {
                reason: format!("trace defect {trace_defect:.3e}"),
            });
        }
        let (lo, _) = self.eigenvalues();
        if lo < -TAU_HERM {
            return Err(Error::NotDensity {
                reason: format!("negative eigenvalue {lo}"),
            });
        }
        Ok(())
    }
}

// JSON encoding: four [re, im] pairs in row-major order.
impl Serialize for Hermitian2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: [[f64; 2]; 4] = [
            [self.m[0][0].re, self.m[0][0].im],
            [self.m[0][1].re, self.m[0][1].im],
            [self.m[1][0].re, self.m[1][0].im],
            [self.m[1][1].re, self.m[1][1].im],
        ];
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Hermitian2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let p = <[[f64; 2]; 4]>::deserialize(deserializer)?;
        Hermitian2::new([
            [c64(p[0][0], p[0][1]), c64(p[1][0], p[1][1])],
            [c64(p[2][0], p[2][1]), c64(p[3][0], p[3][1])],
        ])
        .map_err(D::Error::custom)
    }
}

/// Element `(r0, r1, r2, r3)` of the real four-dimensional space of Pauli
/// coefficients, written `(r0, r)` with `r` the spatial part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(r0: f64, r1: f64, r2: f64, r3: f64) -> Self {
        Self([r0, r1, r2, r3])
    }

    pub fn from_parts(time: f64, space: [f64; 3]) -> Self {
        Self([time, space[0], space[1], space[2]])
    }

    pub fn zero() -> Self {
        Self([0.0; 4])
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0[0] * other.0[0]
            + self.0[1] * other.0[1]
            + self.0[2] * other.0[2]
            + self.0[3] * other.0[3]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
            self.0[3] + other.0[3],
        ])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self([
            self.0[0] - other.0[0],
            self.0[1] - other.0[1],
            self.0[2] - other.0[2],
            self.0[3] - other.0[3],
        ])
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self([
            self.0[0] * factor,
            self.0[1] * factor,
            self.0[2] * factor,
            self.0[3] * factor,
        ])
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }
}

/// Real 3-vector on (or off) the Bloch sphere. Unit norm is required only
/// where the vector labels a projector, and is checked there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self([x, y, z])
    }

    pub fn x_axis() -> Self {
        Self([1.0, 0.0, 0.0])
    }

    pub fn y_axis() -> Self {
        Self([0.0, 1.0, 0.0])
    }

    pub fn z_axis() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn neg(&self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }

    pub fn scale(&self, factor: f64) -> [f64; 3] {
        [self.0[0] * factor, self.0[1] * factor, self.0[2] * factor]
    }

    /// Cosine of the angle to `other`; unit-length inputs reduce this to the
    /// plain dot product.
    pub fn cos_angle_to(&self, other: &Self) -> f64 {
        self.dot(other) / (self.norm() * other.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Errors unless the norm is 1 within [`TAU_UNIT`]. Never renormalizes.
    pub fn validate_unit(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite {
                context: "BlochVector",
            });
        }
        let norm = self.norm();
        if (norm - 1.0).abs() > TAU_UNIT {
            return Err(Error::NotUnit {
                norm,
                tol: TAU_UNIT,
            });
        }
        Ok(())
    }
}

/// Two complex amplitudes `(alpha, beta)`. Non-normalized kets are legal;
/// operations that require normalization check it explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ket2 {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Ket2 {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }

    pub fn norm_sq(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    pub fn validate_normalized(&self) -> Result<()> {
        let norm_sq = self.norm_sq();
        if (norm_sq - 1.0).abs() > TAU_UNIT {
            return Err(Error::NotNormalized {
                norm_sq,
                tol: TAU_UNIT,
            });
        }
        Ok(())
    }

    /// Normalized ket on the ray labelled by a unit Bloch vector, in the
    /// standard gauge `(cos(theta/2), e^{i phi} sin(theta/2))`.
    pub fn from_bloch(n: &BlochVector) -> Result<Self> {
        n.validate_unit()?;
        let theta = n.0[2].clamp(-1.0, 1.0).acos();
        let phi = n.0[1].atan2(n.0[0]);
        let (half_sin, half_cos) = ((0.5 * theta).sin(), (0.5 * theta).cos());
        Ok(Self {
            alpha: c64(half_cos, 0.0),
            beta: c64(phi.cos() * half_sin, phi.sin() * half_sin),
        })
    }
}

/// Pauli coefficients `r_mu = Tr(s_mu A)` of a Hermitian operator.
///
/// The coefficients of a Hermitian operator are real; tiny imaginary
/// residues (bounded by the hermiticity tolerance) are dropped.
pub fn pauli_decompose(op: &Hermitian2) -> FourVector {
    let m = op.matrix();
    FourVector([
        m[0][0].re + m[1][1].re,
        m[1][0].re + m[0][1].re,
        m[1][0].im - m[0][1].im, // Tr(sy A) = Re[i(a01 - a10)]
        m[0][0].re - m[1][1].re,
    ])
}

/// Inverse of [`pauli_decompose`]: `A = (1/2) sum_mu r_mu s_mu`.
pub fn pauli_compose(r: &FourVector) -> Result<Hermitian2> {
    if !r.is_finite() {
        return Err(Error::NonFinite {
            context: "pauli_compose input",
        });
    }
    let [r0, r1, r2, r3] = r.0;
    Ok(Hermitian2::from_parts(
        0.5 * (r0 + r3),
        c64(0.5 * r1, -0.5 * r2),
        0.5 * (r0 - r3),
    ))
}

/// Rank-1 projector `(1/2)(1 + n . sigma)` for a unit Bloch vector.
pub fn projector_from_bloch(n: &BlochVector) -> Result<Hermitian2> {
    n.validate_unit()?;
    pauli_compose(&FourVector::from_parts(1.0, n.0))
}

/// Bloch vector `Tr(sigma P)` of a rank-1 projector. Errors unless the input
/// is idempotent with unit trace.
pub fn bloch_from_projector(p: &Hermitian2) -> Result<BlochVector> {
    p.validate_projector()?;
    let r = pauli_decompose(p);
    Ok(BlochVector([r.0[1], r.0[2], r.0[3]]))
}

/// Outer product `|psi><psi|` of a (possibly non-normalized) ket.
pub fn ket_to_operator(psi: &Ket2) -> Hermitian2 {
    Hermitian2::from_parts(
        psi.alpha.norm_sqr(),
        psi.alpha * psi.beta.conj(),
        psi.beta.norm_sqr(),
    )
}

/// Transition probability `|<phi|psi>|^2` between two normalized kets.
pub fn overlap_probability(phi: &Ket2, psi: &Ket2) -> Result<f64> {
    phi.validate_normalized()?;
    psi.validate_normalized()?;
    Ok((phi.alpha.conj() * psi.alpha + phi.beta.conj() * psi.beta).norm_sqr())
}

/// Euclidean inner product `sum_mu r_mu s_mu` on Pauli coefficient vectors.
pub fn euclidean_inner(r: &FourVector, s: &FourVector) -> f64 {
    r.dot(s)
}

/// Hilbert-Schmidt inner product `Tr(A^dag B)`. Real for Hermitian inputs;
/// the vanishing imaginary part is discarded. Satisfies
/// `euclidean_inner(decompose A, decompose B) = 2 Tr(A^dag B)`.
pub fn hilbert_schmidt_inner(a: &Hermitian2, b: &Hermitian2) -> f64 {
    let (am, bm) = (a.matrix(), b.matrix());
    let mut acc = c64(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += am[i][j].conj() * bm[i][j];
        }
    }
    acc.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::TAU_EQ;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (diff {})", (a - b).abs());
    }

    fn assert_four(v: FourVector, want: [f64; 4], tol: f64) {
        for (got, want) in v.0.iter().zip(want) {
            assert_close(*got, want, tol);
        }
    }

    #[test]
    fn decompose_diag_projector() {
        let p = Hermitian2::from_parts(1.0, c64(0.0, 0.0), 0.0);
        assert_four(pauli_decompose(&p), [1.0, 0.0, 0.0, 1.0], 0.0);
    }

    #[test]
    fn decompose_maximally_mixed() {
        let half_id = Hermitian2::identity().scale(0.5);
        assert_four(pauli_decompose(&half_id), [1.0, 0.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn decompose_half_sigma_x() {
        let op = Hermitian2::from_parts(0.0, c64(0.5, 0.0), 0.0);
        assert_four(pauli_decompose(&op), [0.0, 1.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn compose_inverts_decompose_examples() {
        let p = pauli_compose(&FourVector::new(1.0, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(p, Hermitian2::from_parts(1.0, c64(0.0, 0.0), 0.0));

        let id = pauli_compose(&FourVector::new(2.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(id, Hermitian2::identity());
    }

    #[test]
    fn compose_mixed_coefficients() {
        // Direct matrix arithmetic: (1/2)(1 + 0.6 sx + 0.8 sz)
        // = [[0.9, 0.3], [0.3, 0.1]].
        let op = pauli_compose(&FourVector::new(1.0, 0.6, 0.0, 0.8)).unwrap();
        assert_close(op.entry(0, 0).re, 0.9, 1e-15);
        assert_close(op.entry(0, 1).re, 0.3, 1e-15);
        assert_close(op.entry(1, 0).re, 0.3, 1e-15);
        assert_close(op.entry(1, 1).re, 0.1, 1e-15);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(op.entry(i, j).im, 0.0);
        }
    }

    #[test]
    fn compose_rejects_non_finite() {
        let r = FourVector::new(f64::NAN, 0.0, 0.0, 0.0);
        assert!(matches!(pauli_compose(&r), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn projector_from_axes() {
        let pz = projector_from_bloch(&BlochVector::z_axis()).unwrap();
        assert_eq!(pz, Hermitian2::from_parts(1.0, c64(0.0, 0.0), 0.0));

        let px = projector_from_bloch(&BlochVector::x_axis()).unwrap();
        assert_eq!(px, Hermitian2::from_parts(0.5, c64(0.5, 0.0), 0.5));
        assert!(px.idempotence_defect() <= 1e-15);
        assert_close(px.trace(), 1.0, 0.0);
    }

    #[test]
    fn projector_rejects_short_vector() {
        let err = projector_from_bloch(&BlochVector::new(0.0, 0.0, 0.5));
        assert!(matches!(err, Err(Error::NotUnit { .. })));
    }

    #[test]
    fn bloch_from_projector_axes() {
        let pz = Hermitian2::from_parts(1.0, c64(0.0, 0.0), 0.0);
        assert_eq!(bloch_from_projector(&pz).unwrap(), BlochVector::z_axis());

        let pdown = Hermitian2::from_parts(0.0, c64(0.0, 0.0), 1.0);
        assert_eq!(
            bloch_from_projector(&pdown).unwrap(),
            BlochVector::new(0.0, 0.0, -1.0)
        );
    }

    #[test]
    fn bloch_from_projector_y_axis() {
        // Matrix-trace oracle: entries ((1/2, -i/2), (i/2, 1/2)) give
        // Tr(sy P) = 1 and zero for the other two axes.
        let p = Hermitian2::new([
            [c64(0.5, 0.0), c64(0.0, -0.5)],
            [c64(0.0, 0.5), c64(0.5, 0.0)],
        ])
        .unwrap();
        assert_eq!(bloch_from_projector(&p).unwrap(), BlochVector::y_axis());
    }

    #[test]
    fn bloch_from_projector_rejects_non_projector() {
        let half_id = Hermitian2::identity().scale(0.5);
        assert!(matches!(
            bloch_from_projector(&half_id),
            Err(Error::NotProjector { .. })
        ));
    }

    #[test]
    fn ket_outer_products() {
        let up = Ket2::new(c64(1.0, 0.0), c64(0.0, 0.0));
        assert_eq!(
            ket_to_operator(&up),
            Hermitian2::from_parts(1.0, c64(0.0, 0.0), 0.0)
        );

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = Ket2::new(c64(s, 0.0), c64(s, 0.0));
        let op = ket_to_operator(&plus);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_close(op.entry(i, j).re, 0.5, 1e-15);
            assert_close(op.entry(i, j).im, 0.0, 0.0);
        }

        // Non-normalized kets are allowed here.
        let scaled = Ket2::new(c64(2.0, 0.0), c64(0.0, 0.0));
        assert_eq!(
            ket_to_operator(&scaled),
            Hermitian2::from_parts(4.0, c64(0.0, 0.0), 0.0)
        );
        assert_close(ket_to_operator(&scaled).trace(), scaled.norm_sq(), 0.0);
    }

    #[test]
    fn overlap_probability_basis_cases() {
        let up = Ket2::new(c64(1.0, 0.0), c64(0.0, 0.0));
        let down = Ket2::new(c64(0.0, 0.0), c64(1.0, 0.0));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = Ket2::new(c64(s, 0.0), c64(s, 0.0));

        assert_close(overlap_probability(&up, &up).unwrap(), 1.0, 0.0);
        assert_close(overlap_probability(&up, &down).unwrap(), 0.0, 0.0);
        assert_close(overlap_probability(&up, &plus).unwrap(), 0.5, 1e-15);
    }

    #[test]
    fn overlap_rejects_non_normalized() {
        let up = Ket2::new(c64(1.0, 0.0), c64(0.0, 0.0));
        let big = Ket2::new(c64(2.0, 0.0), c64(0.0, 0.0));
        assert!(matches!(
            overlap_probability(&up, &big),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn euclidean_inner_cases() {
        let up = FourVector::new(1.0, 0.0, 0.0, 1.0);
        let down = FourVector::new(1.0, 0.0, 0.0, -1.0);
        let reflected = FourVector::new(-1.0, 0.0, 0.0, 1.0);
        assert_eq!(euclidean_inner(&up, &down), 0.0);
        assert_eq!(euclidean_inner(&up, &up), 2.0);
        // (-1, n) is orthogonal to (1, n).
        assert_eq!(euclidean_inner(&reflected, &up), 0.0);
    }

    #[test]
    fn hilbert_schmidt_cases() {
        let pz = projector_from_bloch(&BlochVector::z_axis()).unwrap();
        let pz_down = projector_from_bloch(&BlochVector::new(0.0, 0.0, -1.0)).unwrap();
        let px = projector_from_bloch(&BlochVector::x_axis()).unwrap();

        assert_close(hilbert_schmidt_inner(&pz, &pz), 1.0, 1e-15);
        assert_close(hilbert_schmidt_inner(&pz, &pz_down), 0.0, 1e-15);
        assert_close(hilbert_schmidt_inner(&pz, &px), 0.5, 1e-15);
    }

    #[test]
    fn parseval_relation_spot_check() {
        let a = Hermitian2::from_parts(0.7, c64(0.2, -0.4), -1.1);
        let b = Hermitian2::from_parts(-0.3, c64(1.5, 0.9), 0.6);
        let lhs = euclidean_inner(&pauli_decompose(&a), &pauli_decompose(&b));
        assert_close(lhs, 2.0 * hilbert_schmidt_inner(&a, &b), TAU_EQ);
    }

    #[test]
    fn hermitian_validation_rejects_asymmetry() {
        let bad = Hermitian2::new([
            [c64(1.0, 0.0), c64(0.5, 0.0)],
            [c64(0.4, 0.0), c64(0.0, 0.0)],
        ]);
        assert!(matches!(bad, Err(Error::NotHermitian { .. })));

        let bad_diag = Hermitian2::new([
            [c64(1.0, 1e-3), c64(0.0, 0.0)],
            [c64(0.0, 0.0), c64(0.0, 0.0)],
        ]);
        assert!(matches!(bad_diag, Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn cos_angle_between_bloch_vectors() {
        let z = BlochVector::z_axis();
        assert_eq!(z.cos_angle_to(&BlochVector::x_axis()), 0.0);
        assert_eq!(z.cos_angle_to(&z.neg()), -1.0);
        // Scale invariance: the angle ignores vector length.
        let long = BlochVector::new(0.0, 0.0, 7.5);
        assert_close(
            long.cos_angle_to(&BlochVector::new(0.6, 0.0, 0.8)),
            0.8,
            1e-15,
        );
    }

    #[test]
    fn ket_from_bloch_matches_projector() {
        for n in [
            BlochVector::z_axis(),
            BlochVector::x_axis(),
            BlochVector::y_axis(),
            BlochVector::new(0.6, 0.0, 0.8),
            BlochVector::new(0.0, 0.0, -1.0),
        ] {
            let ket = Ket2::from_bloch(&n).unwrap();
            ket.validate_normalized().unwrap();
            let recovered = bloch_from_projector(&ket_to_operator(&ket)).unwrap();
            for (got, want) in recovered.0.iter().zip(n.0) {
                assert_close(*got, want, 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_json_round_trip() {
        let op = Hermitian2::from_parts(0.5, c64(0.25, -0.75), 0.5);
        let json = serde_json::to_string(&op).unwrap();
        assert_eq!(json, "[[0.5,0.0],[0.25,-0.75],[0.25,0.75],[0.5,0.0]]");
        let back: Hermitian2 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn hermitian_json_rejects_asymmetry() {
        let err = serde_json::from_str::<Hermitian2>("[[1.0,0.0],[0.5,0.0],[0.4,0.0],[0.0,0.0]]");
        assert!(err.is_err());
    }
}
