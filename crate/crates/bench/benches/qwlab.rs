use std::f64::consts::FRAC_PI_6;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qwlab_core::genfun::{gamma_roots, time_averaged_limit_residue, xi_tilde_x};
use qwlab_core::pathsum::{return_amplitudes_renewal, ReturnSeries};
use qwlab_core::series::rstar_series;
use qwlab_core::walk::{cesaro_average, evolve};
use qwlab_core::{Amplitude2, CoinField, DefectAngle, WalkState, C64};

fn qubit() -> Amplitude2 {
    Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8))
}

fn evolution(c: &mut Criterion) {
    let field = CoinField::one_defect(FRAC_PI_6).unwrap();
    let mut group = c.benchmark_group("evolve");
    for n in [200usize, 1000] {
        let start = WalkState::point_mass(qubit(), n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| evolve(black_box(&start), &field, n).unwrap())
        });
    }
    group.bench_function("cesaro_1000", |b| b.iter(|| cesaro_average(&field, qubit(), 1000).unwrap()));
    group.finish();
}

fn renewal(c: &mut Criterion) {
    let angle = DefectAngle::new(FRAC_PI_6).unwrap();
    let mut group = c.benchmark_group("renewal");
    for n in [100usize, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| return_amplitudes_renewal(angle, qubit(), black_box(n)))
        });
    }
    group.finish();
}

fn generating_function(c: &mut Criterion) {
    let angle = DefectAngle::new(FRAC_PI_6).unwrap();
    let mut group = c.benchmark_group("genfun");
    group.sample_size(10);
    group.bench_function("rstar_series_256", |b| b.iter(|| rstar_series(black_box(256))));
    for n in [256usize, 2000] {
        group.bench_with_input(BenchmarkId::new("return_series", n), &n, |b, &n| {
            b.iter(|| ReturnSeries::new(angle, black_box(n)))
        });
    }
    group.bench_function("xi_tilde_x", |b| {
        b.iter(|| xi_tilde_x(angle, black_box(C64::new(0.3, 0.4)), 5, qubit()).unwrap())
    });
    group.finish();
}

fn residues(c: &mut Criterion) {
    let angle = DefectAngle::new(FRAC_PI_6).unwrap();
    let mut group = c.benchmark_group("residues");
    group.bench_function("gamma_roots", |b| b.iter(|| gamma_roots(black_box(angle)).unwrap()));
    group.bench_function("limit_measure_x3", |b| {
        b.iter(|| time_averaged_limit_residue(angle, black_box(3), qubit()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, evolution, renewal, generating_function, residues);
criterion_main!(benches);
