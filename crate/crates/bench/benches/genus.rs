use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jenga_core::topology::vertex_census;
use jenga_core::{
    extract_boundary, genus_descartes, genus_euler, make_nk_configuration, validate_closed_surface,
    voxelize, GameParams,
};

fn boundary(c: &mut Criterion) {
    let mut group = c.benchmark_group("boundary");
    for (n, k) in [(5, 3), (8, 6), (9, 8)] {
        let q = make_nk_configuration(GameParams { n, k }).unwrap();
        let v = voxelize(&q);
        group.bench_with_input(BenchmarkId::new("extract", format!("{n}x{k}")), &v, |b, v| {
            b.iter(|| extract_boundary(black_box(v)))
        });
        let s = extract_boundary(&v);
        group.bench_with_input(BenchmarkId::new("validate", format!("{n}x{k}")), &s, |b, s| {
            b.iter(|| validate_closed_surface(black_box(s)))
        });
    }
    group.finish();
}

fn genus(c: &mut Criterion) {
    let mut group = c.benchmark_group("genus");
    for (n, k) in [(5, 3), (9, 8)] {
        let q = make_nk_configuration(GameParams { n, k }).unwrap();
        let s = extract_boundary(&voxelize(&q));
        let id = format!("{n}x{k}");
        group.bench_with_input(BenchmarkId::new("euler", &id), &s, |b, s| {
            b.iter(|| genus_euler(black_box(s)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("descartes", &id), &s, |b, s| {
            b.iter(|| genus_descartes(black_box(s)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("census", &id), &(s, q), |b, (s, q)| {
            b.iter(|| vertex_census(black_box(s), q, true).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, boundary, genus);
criterion_main!(benches);
