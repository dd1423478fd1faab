//! Benchmarks for the hot paths: the operator/coefficient dictionary, the
//! measure derivation (including its internal cross-check solve), batch
//! additivity checking, and the rank-revealing fit.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use bornlab_core::tol::TOL_RANK;
use bornlab_core::{
    born_probability, check_orthogonal_additivity, derive_measure, fit_gudder, pauli_compose,
    pauli_decompose, sample_orthogonal_pair, BlochVector, FourVector, GudderFunctional, Hermitian2,
    MeasureSample, SeededRng,
};

fn bench_pauli_round_trip(c: &mut Criterion) {
    let op = Hermitian2::from_parts(0.7, bornlab_core::Complex64::new(0.2, -0.4), -1.1);
    c.bench_function("pauli_decompose_compose_round_trip", |b| {
        b.iter(|| {
            let r = pauli_decompose(black_box(&op));
            pauli_compose(black_box(&r)).unwrap()
        })
    });
}

fn bench_derive_measure(c: &mut Criterion) {
    let axis = BlochVector::new(0.6, 0.0, 0.8);
    c.bench_function("derive_measure_with_cross_check", |b| {
        b.iter(|| derive_measure(black_box(&axis)).unwrap())
    });
}

fn bench_born_probability(c: &mut Criterion) {
    let phi = BlochVector::new(0.6, 0.0, 0.8);
    let psi = BlochVector::new(0.0, 0.8, -0.6);
    c.bench_function("born_probability", |b| {
        b.iter(|| born_probability(black_box(&phi), black_box(&psi)).unwrap())
    });
}

fn bench_orthogonal_pair_sampling(c: &mut Criterion) {
    c.bench_function("sample_orthogonal_pair", |b| {
        let mut rng = SeededRng::new(1);
        b.iter(|| sample_orthogonal_pair(&mut rng))
    });
}

fn bench_additivity_check(c: &mut Criterion) {
    let functional = GudderFunctional::new(1.3, FourVector::new(0.5, -0.2, 0.9, 0.1));
    c.bench_function("check_orthogonal_additivity_1000_pairs", |b| {
        b.iter(|| check_orthogonal_additivity(|r| functional.eval(r), 1_000, 42, 1e-8))
    });
}

fn bench_fit(c: &mut Criterion) {
    let functional = derive_measure(&BlochVector::z_axis()).unwrap().0;
    let mut rng = SeededRng::new(9);
    let samples: Vec<MeasureSample> = (0..200)
        .map(|_| {
            let r = rng.next_four_vector();
            MeasureSample {
                r,
                value: functional.eval(&r),
            }
        })
        .collect();
    c.bench_function("fit_gudder_200_samples", |b| {
        b.iter(|| fit_gudder(black_box(&samples), TOL_RANK).unwrap())
    });
}

criterion_group!(
    benches,
    bench_pauli_round_trip,
    bench_derive_measure,
    bench_born_probability,
    bench_orthogonal_pair_sampling,
    bench_additivity_check,
    bench_fit,
);
criterion_main!(benches);
