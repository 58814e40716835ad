//! Sieve throughput: the rayon block scheduler against the sequential
//! reference path, over the same checkpoints.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torsor_core::arith::{
    count_kummer_at, count_kummer_seq, count_quadratic_at, count_quadratic_seq,
    decade_checkpoints,
};
use torsor_core::catalog::gamma_catalog;
use torsor_core::cohomology::h1_classes;

fn bench_quadratic(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadratic_count");
    group.sample_size(10);
    for bound in [1_000_000u64, 10_000_000] {
        let cps = decade_checkpoints(bound);
        group.bench_with_input(BenchmarkId::new("parallel", bound), &cps, |b, cps| {
            b.iter(|| count_quadratic_at(cps))
        });
        group.bench_with_input(BenchmarkId::new("sequential", bound), &cps, |b, cps| {
            b.iter(|| count_quadratic_seq(cps))
        });
    }
    group.finish();
}

fn bench_kummer(c: &mut Criterion) {
    let mut group = c.benchmark_group("kummer_count_m3");
    group.sample_size(10);
    for bound in [1_000_000u64, 10_000_000] {
        let cps = decade_checkpoints(bound);
        group.bench_with_input(BenchmarkId::new("parallel", bound), &cps, |b, cps| {
            b.iter(|| count_kummer_at(3, cps).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", bound), &cps, |b, cps| {
            b.iter(|| count_kummer_seq(3, cps).unwrap())
        });
    }
    group.finish();
}

fn bench_catalog_h1(c: &mut Criterion) {
    use rayon::prelude::*;
    let entries = gamma_catalog();
    let mut group = c.benchmark_group("catalog_h1_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            entries
                .par_iter()
                .map(|e| h1_classes(&e.gg).unwrap().classes.len())
                .sum::<usize>()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            entries
                .iter()
                .map(|e| h1_classes(&e.gg).unwrap().classes.len())
                .sum::<usize>()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_quadratic, bench_kummer, bench_catalog_h1);
criterion_main!(benches);
