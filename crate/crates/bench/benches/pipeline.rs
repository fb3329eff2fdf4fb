use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gaugeform::verify::{lemma_check, sample_check};
use gaugeform::{charpoly_series, forward_map, inverse_map, normalize, Complex, PuiseuxExpansion, DEFAULT_PRECISION};
use gaugeform_bench::{puiseux_coefficients, rational_series};
use std::hint::black_box;

fn bench_normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for (n, k) in [(2, 2), (4, 3), (6, 4)] {
        let a = rational_series(n, k);
        group.bench_with_input(BenchmarkId::new("exact", format!("n{n}k{k}")), &a, |b, a| {
            b.iter(|| normalize(black_box(a), k).unwrap())
        });
        let ac = a.to_complex(DEFAULT_PRECISION);
        group.bench_with_input(BenchmarkId::new("complex256", format!("n{n}k{k}")), &ac, |b, a| {
            b.iter(|| normalize(black_box(a), k).unwrap())
        });
    }
    group.finish();
}

fn bench_charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("charpoly");
    for (n, k) in [(3, 2), (6, 4)] {
        let a = rational_series(n, k);
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}k{k}")), &a, |b, a| {
            b.iter(|| charpoly_series(black_box(a)))
        });
    }
    group.finish();
}

fn bench_puiseux(c: &mut Criterion) {
    let mut group = c.benchmark_group("puiseux");
    for (n, k) in [(2, 3), (5, 3)] {
        let a = PuiseuxExpansion::new(n, puiseux_coefficients(n, k, DEFAULT_PRECISION), 0).unwrap();
        let b = forward_map(&a, k).unwrap();
        group.bench_with_input(BenchmarkId::new("forward", format!("n{n}k{k}")), &a, |bch, a| {
            bch.iter(|| forward_map(black_box(a), k).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("inverse", format!("n{n}k{k}")), &b, |bch, b| {
            bch.iter(|| inverse_map(black_box(b), n, 0).unwrap())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("lemma_n6", |b| b.iter(|| lemma_check(black_box(6), None, DEFAULT_PRECISION)));
    let a = rational_series(3, 2);
    let z0 = Complex::from_f64(DEFAULT_PRECISION, 1e-3, 0.0);
    group.bench_function("sample_n3k2", |b| b.iter(|| sample_check(black_box(&a), 2, &z0)));
    group.finish();
}

criterion_group!(benches, bench_normalize, bench_charpoly, bench_puiseux, bench_verify);
criterion_main!(benches);
