//! Parallel-vs-sequential comparison for the data-parallel entry points.
//! With `--no-default-features` the parallel functions degrade to the
//! sequential path, so both sides of each group coincide.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyrec::{
    builtin, certify_all, certify_all_sequential, enumerate_symmetric,
    enumerate_symmetric_sequential, enumerate_tableaux, enumerate_tableaux_sequential, rat, Caps,
    Family,
};

fn bench_plain_enumeration(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("enumerate_plain");
    group.sample_size(10);
    for n in [5usize, 6, 7] {
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| enumerate_tableaux(n, &caps).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| enumerate_tableaux_sequential(n, &caps).unwrap().len())
        });
    }
    group.finish();
}

fn bench_symmetric_enumeration(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("enumerate_symmetric");
    group.sample_size(10);
    for m in [3usize, 4] {
        group.bench_with_input(BenchmarkId::new("parallel", m), &m, |b, &m| {
            b.iter(|| enumerate_symmetric(m, &caps).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("sequential", m), &m, |b, &m| {
            b.iter(|| enumerate_symmetric_sequential(m, &caps).unwrap().len())
        });
    }
    group.finish();
}

fn bench_certification_sweep(c: &mut Criterion) {
    let polys = builtin(&Family::Abn).unwrap().generate(12).unwrap();
    let lo = rat(-1, 1);
    let hi = rat(0, 1);
    let mut group = c.benchmark_group("certify_family_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| certify_all(&polys[1..], Some((&lo, &hi))).unwrap().len())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            certify_all_sequential(&polys[1..], Some((&lo, &hi)))
                .unwrap()
                .len()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_plain_enumeration,
    bench_symmetric_enumeration,
    bench_certification_sweep
);
criterion_main!(benches);
