//! Parallel vs sequential throughput on the two data-parallel hot paths:
//! grid scans (independent grid points) and Gram levels (independent weight
//! levels). Run with `cargo bench -p superverma-core`.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;

use superverma_core::structure::{osp12, sl2};
use superverma_core::unitary::{unitary_scan, unitary_scan_seq};
use superverma_core::verma::{verma, LambdaSpec};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn bench_scan(c: &mut Criterion) {
    let alg = Arc::new(osp12());
    let (from, to, step) = (rat(-6, 1), rat(6, 1), rat(1, 8));
    let mut group = c.benchmark_group("unitary_scan_97pts_depth10");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(unitary_scan(&alg, &from, &to, &step, 10).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(unitary_scan_seq(&alg, &from, &to, &step, 10).unwrap()))
    });
    group.finish();
}

fn bench_gram_levels(c: &mut Criterion) {
    let module = verma(&Arc::new(sl2()), LambdaSpec::Symbolic, 12).unwrap();
    let mut group = c.benchmark_group("symbolic_gram_levels_depth12");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(module.gram_levels(12).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let levels: Vec<_> = (0..=12).map(|d| module.gram(d).unwrap()).collect();
            black_box(levels)
        })
    });
    group.finish();
}

criterion_group!(benches, bench_scan, bench_gram_levels);
criterion_main!(benches);
