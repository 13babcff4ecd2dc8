use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use sumsynth::exactnum::BigInt;
use sumsynth::faulhaber::{faulhaber_row_bernoulli, faulhaber_row_system};
use sumsynth::{synth_fact_sum, synth_poly_sum, synth_weighted_periodic, DegreeBounds};
use sumsynth_bench::{dense_poly, factorial_case, FACTORIAL_CASES};

fn faulhaber_rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("faulhaber_row");
    for k in [5u32, 10, 20] {
        group.bench_with_input(BenchmarkId::new("system", k), &k, |b, &k| {
            b.iter(|| faulhaber_row_system(black_box(k)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("bernoulli", k), &k, |b, &k| {
            b.iter(|| faulhaber_row_bernoulli(black_box(k)).unwrap())
        });
    }
    group.finish();
}

fn poly_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("synth_poly_sum");
    for deg in [4u32, 8, 16] {
        let f = dense_poly(deg);
        group.bench_with_input(BenchmarkId::from_parameter(deg), &f, |b, f| {
            b.iter(|| synth_poly_sum(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn factorial_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("synth_fact_sum");
    for &(expr, (a, b)) in FACTORIAL_CASES {
        let p = factorial_case(expr);
        group.bench_function(expr, |bench| {
            bench.iter(|| synth_fact_sum(black_box(&p), DegreeBounds::new(a, b)).unwrap())
        });
    }
    let p = factorial_case("n!");
    group.bench_function("certificate n! (3,2)", |bench| {
        bench.iter(|| synth_fact_sum(black_box(&p), DegreeBounds::new(3, 2)).unwrap())
    });
    group.finish();
}

fn periodic_weights(c: &mut Criterion) {
    let f = dense_poly(4);
    let pattern: Vec<BigInt> = [3i64, -1, 0, 2, -3].iter().map(|&v| v.into()).collect();
    c.bench_function("synth_weighted_periodic p=5", |b| {
        b.iter(|| synth_weighted_periodic(black_box(&f), &pattern).unwrap())
    });
}

criterion_group!(benches, faulhaber_rows, poly_sums, factorial_sums, periodic_weights);
criterion_main!(benches);
