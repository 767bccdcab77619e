use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use otl_core::calibrated::{build_calibrated, check_hecke_relations, NumericSeed};
use otl_core::llt::{block_of, delta_matrix, na_factorize};
use otl_core::params::{presets, SpecialPoint};
use otl_core::paths::{degree_tiles, reduced_word, residue_classes};
use otl_core::tableaux::{enumerate_std, shapes};
use otl_core::Shape;

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_theta");
    for n in [10usize, 14, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_std(black_box(n), Shape::theta()).unwrap().len())
        });
    }
    group.finish();
}

fn bench_degrees(c: &mut Criterion) {
    let cfg = presets::e14_q4_q8();
    let all = enumerate_std(12, Shape::new(2, SpecialPoint::Alpha1)).unwrap();
    c.bench_function("degree_tiles n=12", |b| {
        b.iter(|| all.iter().map(|t| degree_tiles(t, &cfg)).sum::<i64>())
    });
    c.bench_function("reduced_word n=12", |b| {
        b.iter(|| all.iter().map(|t| reduced_word(t, &cfg).len()).sum::<usize>())
    });
}

fn bench_classes(c: &mut Criterion) {
    let cfg = presets::e7_q4();
    c.bench_function("residue_classes n=10", |b| b.iter(|| residue_classes(black_box(10), &cfg).len()));
}

fn bench_delta(c: &mut Criterion) {
    let cfg = presets::e5_formal();
    let block = block_of(16, &cfg, Shape::new(16, SpecialPoint::Alpha1)).unwrap();
    c.bench_function("delta block e=5 n=16", |b| {
        b.iter(|| delta_matrix(16, &cfg, Some(&block)).unwrap())
    });
    let full = delta_matrix(12, &presets::e7_q4(), None).unwrap();
    c.bench_function("na_factorize e=7 n=12", |b| b.iter(|| na_factorize(black_box(&full)).unwrap()));
}

fn bench_calibrated(c: &mut Criterion) {
    let cfg = presets::generic();
    let n = 6;
    let seed = NumericSeed::seeded(&cfg, n, 1).unwrap();
    let mut group = c.benchmark_group("calibrated n=6");
    group.sample_size(20);
    for s in shapes(n).into_iter().filter(|s| s.k <= 2) {
        group.bench_with_input(BenchmarkId::from_parameter(s), &s, |b, &s| {
            b.iter(|| {
                let m = build_calibrated(&cfg, n, s, &seed).unwrap();
                check_hecke_relations(&m, 1e-8).max_residual()
            })
        });
    }
    group.finish();
}

criterion_group!(combinatorics, bench_enumerate, bench_degrees, bench_classes);
criterion_group!(matrices, bench_delta);
criterion_group!(calibrated, bench_calibrated);
criterion_main!(combinatorics, matrices, calibrated);
