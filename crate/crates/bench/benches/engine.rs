//! The four costs that matter: the quadratic exact sweep, the truncated
//! sweep it is traded against, raw network growth, and the fit on top.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use degflow_core::{degree_distribution, fit_power_law, simulate, tail_fit_range, GrowthModel};
use std::hint::black_box;

/// Doubling t should roughly quadruple this one.
fn evolve_exact(c: &mut Criterion) {
    let model = GrowthModel::constant(1).unwrap();
    let mut group = c.benchmark_group("evolve_exact");
    group.sample_size(20);
    for t in [1_000u64, 2_000, 4_000] {
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            b.iter(|| degree_distribution(black_box(&model), 1, t, 0.0).unwrap());
        });
    }
    group.finish();
}

fn evolve_truncated(c: &mut Criterion) {
    let model = GrowthModel::constant(3).unwrap();
    c.bench_function("evolve_truncated/t=20000", |b| {
        b.iter(|| degree_distribution(black_box(&model), 3, 20_000, 1e-10).unwrap());
    });
}

fn simulate_network(c: &mut Criterion) {
    let model = GrowthModel::constant(3).unwrap();
    c.bench_function("simulate/t=10000", |b| {
        b.iter(|| simulate(black_box(&model), 10_000, 42).unwrap());
    });
}

fn fit_tail(c: &mut Criterion) {
    let model = GrowthModel::constant(3).unwrap();
    let dist = degree_distribution(&model, 3, 20_000, 1e-10).unwrap();
    let (lo, hi) = tail_fit_range(&dist).unwrap();
    c.bench_function("fit_tail", |b| {
        b.iter(|| fit_power_law(black_box(&dist), lo, hi).unwrap());
    });
}

criterion_group!(
    benches,
    evolve_exact,
    evolve_truncated,
    simulate_network,
    fit_tail
);
criterion_main!(benches);
