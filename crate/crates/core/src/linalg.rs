//! Minimum-norm least squares for tall systems with five columns.
//!
//! One-sided Jacobi orthogonalization of the design columns yields the full
//! SVD with high relative accuracy even for exactly dependent columns, which
//! is what the rank threshold (a ratio of singular values) needs. On the
//! rank-deficient supports that come up here, the tiny singular values land
//! near machine epsilon times the largest one instead of being inflated by a
//! normal-equations pass.

use crate::error::{Error, Result};

pub const N_PARAMS: usize = 5;

const MAX_SWEEPS: usize = 60;
const ORTHO_EPS: f64 = 1e-14;

/// Rank-revealing minimum-norm solution of `rows * x ~ rhs`.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    /// Singular values of the design matrix, descending.
    pub singular_values: [f64; N_PARAMS],
    /// Minimum-norm solution (pseudo-inverse convention).
    pub solution: [f64; N_PARAMS],
    /// Number of singular values above `rank_tol` times the largest.
    pub rank: usize,
    /// Right singular vectors for the discarded singular values; these span
    /// the numerical null space of the design matrix.
    pub null_space: Vec<[f64; N_PARAMS]>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `min |x|` over `argmin |A x - b|` where `A` has `rows.len()` rows
/// and five columns. `rank_tol` is relative to the largest singular value.
#[allow(clippy::needless_range_loop)] // rotations pair two columns in place
pub fn min_norm_least_squares(
    rows: &[[f64; N_PARAMS]],
    rhs: &[f64],
    rank_tol: f64,
) -> Result<LeastSquares> {
    if rows.len() != rhs.len() || rows.is_empty() {
        return Err(Error::invalid(format!(
            "design has {} rows but rhs has {} entries",
            rows.len(),
            rhs.len()
        )));
    }
    if rows.iter().any(|r| r.iter().any(|x| !x.is_finite())) || rhs.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            context: "least-squares input",
        });
    }

    let m = rows.len();

    // Working copy of A as columns; V accumulates the right rotations.
    let mut w: [Vec<f64>; N_PARAMS] = core::array::from_fn(|j| rows.iter().map(|r| r[j]).collect());
    let mut v = [[0.0f64; N_PARAMS]; N_PARAMS];
    for (j, col) in v.iter_mut().enumerate() {
        col[j] = 1.0;
    }

    // Columns that fall below epsilon times the matrix norm carry no
    // information at this scale but can stay stubbornly non-orthogonal in
    // the relative sense (exactly dependent inputs collapse into subnormal
    // noise columns). Deflating them to exact zero keeps the sweep finite.
    let frobenius: f64 = w.iter().map(|col| dot(col, col)).sum::<f64>().sqrt();
    let deflate_floor_sq = (frobenius * f64::EPSILON).powi(2);

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for col in w.iter_mut() {
            let norm_sq = dot(col, col);
            if norm_sq > 0.0 && norm_sq < deflate_floor_sq {
                col.iter_mut().for_each(|x| *x = 0.0);
            }
        }
        for p in 0..N_PARAMS - 1 {
            for q in p + 1..N_PARAMS {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let gamma = dot(&w[p], &w[q]);
                if gamma.abs() <= ORTHO_EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (wp, wq) = (w[p][i], w[q][i]);
                    w[p][i] = c * wp - s * wq;
                    w[q][i] = s * wp + c * wq;
                }
                for i in 0..N_PARAMS {
                    let (vp, vq) = (v[p][i], v[q][i]);
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Column norms are the singular values; sort descending.
    let mut order: [usize; N_PARAMS] = core::array::from_fn(|j| j);
    let norms: [f64; N_PARAMS] = core::array::from_fn(|j| dot(&w[j], &w[j]).sqrt());
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).expect("finite norms"));

    let singular_values: [f64; N_PARAMS] = core::array::from_fn(|j| norms[order[j]]);
    let sigma_max = singular_values[0];
    let rank = if sigma_max > 0.0 {
        singular_values
            .iter()
            .filter(|&&s| s > rank_tol * sigma_max)
            .count()
    } else {
        0
    };

    // Minimum-norm solution x = sum_j v_j (u_j . b) / sigma_j over the
    // retained spectrum, with u_j the normalized rotated column.
    let mut solution = [0.0f64; N_PARAMS];
    for j in 0..rank {
        let col = order[j];
        let sigma = singular_values[j];
        let coeff = dot(&w[col], rhs) / (sigma * sigma);
        for i in 0..N_PARAMS {
            solution[i] += coeff * v[col][i];
        }
    }

    let null_space = (rank..N_PARAMS).map(|j| v[order[j]]).collect();

    Ok(LeastSquares {
        singular_values,
        solution,
        rank,
        null_space,
    })
}
