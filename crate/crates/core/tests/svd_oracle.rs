//! Cross-checks the fit pipeline's rank-revealing solver against nalgebra's
//! independently implemented SVD (Golub-Kahan route vs the in-crate
//! one-sided Jacobi route).

use bornlab_core::tol::TOL_RANK;
use bornlab_core::{
    build_design_row, derive_measure, fit_gudder, BlochVector, FourVector, MeasureSample, SeededRng,
};
use nalgebra::{DMatrix, DVector};

fn design_matrix(samples: &[MeasureSample]) -> DMatrix<f64> {
    let rows: Vec<[f64; 5]> = samples.iter().map(|s| build_design_row(&s.r)).collect();
    DMatrix::from_fn(rows.len(), 5, |i, j| rows[i][j])
}

fn sorted_desc(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values
}

fn general_samples(n: usize, seed: u64) -> Vec<MeasureSample> {
    let functional = derive_measure(&BlochVector::new(0.0, 0.6, 0.8)).unwrap().0;
    let mut rng = SeededRng::new(seed);
    (0..n)
        .map(|_| {
            let r = rng.next_four_vector();
            MeasureSample {
                r,
                value: functional.eval(&r),
            }
        })
        .collect()
}

fn slice_samples(n: usize, seed: u64) -> Vec<MeasureSample> {
    let functional = derive_measure(&BlochVector::new(0.0, 0.6, 0.8)).unwrap().0;
    let mut rng = SeededRng::new(seed);
    (0..n)
        .map(|_| {
            let n_psi = rng.next_unit_bloch();
            let r = FourVector::from_parts(1.0, n_psi.0);
            MeasureSample {
                r,
                value: functional.eval(&r),
            }
        })
        .collect()
}

#[test]
fn singular_values_match_nalgebra_on_general_supports() {
    for seed in [1u64, 2, 3, 17, 99] {
        let samples = general_samples(60, seed);
        let fit = fit_gudder(&samples, TOL_RANK).unwrap();

        let svd = design_matrix(&samples).svd(false, false);
        let reference = sorted_desc(svd.singular_values.iter().copied().collect());
        for (mine, theirs) in fit.singular_values.iter().zip(&reference) {
            let scale = reference[0];
            assert!(
                (mine - theirs).abs() <= 1e-10 * scale,
                "seed {seed}: {mine} vs {theirs}"
            );
        }
    }
}

#[test]
fn solution_matches_nalgebra_pseudo_inverse() {
    for seed in [5u64, 6, 7] {
        let samples = general_samples(40, seed);
        let fit = fit_gudder(&samples, TOL_RANK).unwrap();

        let a = design_matrix(&samples);
        let b = DVector::from_fn(samples.len(), |i, _| samples[i].value);
        let svd = a.svd(true, true);
        let reference = svd.solve(&b, 1e-12).expect("nalgebra solve");
        for (mine, theirs) in fit.k_hat.0.iter().zip(reference.iter().skip(1)) {
            assert!(
                (mine - theirs).abs() <= 1e-9,
                "seed {seed}: {mine} vs {theirs}"
            );
        }
        assert!((fit.c_hat - reference[0]).abs() <= 1e-9);
    }
}

#[test]
fn slice_rank_deficiency_confirmed_by_nalgebra() {
    let mut samples = slice_samples(120, 11);
    let fit = fit_gudder(&samples, TOL_RANK).unwrap();
    assert_eq!(fit.design_rank, 4);

    let svd = design_matrix(&samples).svd(false, false);
    let reference = sorted_desc(svd.singular_values.iter().copied().collect());
    let rank = reference
        .iter()
        .filter(|&&s| s > TOL_RANK * reference[0])
        .count();
    assert_eq!(rank, 4, "independent SVD sees the same deficiency");

    // Minimum-norm solutions of both routes agree even on the deficient
    // support.
    let a = design_matrix(&samples);
    let b = DVector::from_fn(samples.len(), |i, _| samples[i].value);
    let reference_solution = a.clone().svd(true, true).solve(&b, 1e-8).expect("solve");
    assert!((fit.c_hat - reference_solution[0]).abs() <= 1e-8);
    for (mine, theirs) in fit.k_hat.0.iter().zip(reference_solution.iter().skip(1)) {
        assert!((mine - theirs).abs() <= 1e-8);
    }

    // One off-slice anchor restores full rank in both routes.
    let functional = derive_measure(&BlochVector::new(0.0, 0.6, 0.8)).unwrap().0;
    let anchor = FourVector::new(-1.0, 0.0, 0.6, 0.8);
    samples.push(MeasureSample {
        r: anchor,
        value: functional.eval(&anchor),
    });
    let fit = fit_gudder(&samples, TOL_RANK).unwrap();
    assert_eq!(fit.design_rank, 5);

    let svd = design_matrix(&samples).svd(false, false);
    let reference = sorted_desc(svd.singular_values.iter().copied().collect());
    let rank = reference
        .iter()
        .filter(|&&s| s > TOL_RANK * reference[0])
        .count();
    assert_eq!(rank, 5);
}
