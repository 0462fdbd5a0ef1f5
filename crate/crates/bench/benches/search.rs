use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use jenga_core::game::{canonicalize, legal_moves, max_genus_search, SearchOptions};
use jenga_core::{make_nk_configuration, GameParams};

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("exhaustive 3x3", |b| {
        b.iter(|| max_genus_search(black_box(GameParams { n: 3, k: 3 }), SearchOptions::default()))
    });
    group.bench_function("4x3 first 2000 states", |b| {
        let o = SearchOptions {
            max_states: 2000,
            ..SearchOptions::default()
        };
        b.iter(|| max_genus_search(black_box(GameParams { n: 4, k: 3 }), o))
    });
    group.finish();
}

fn moves(c: &mut Criterion) {
    let q = make_nk_configuration(GameParams { n: 6, k: 4 }).unwrap();
    c.bench_function("legal moves 6x4", |b| b.iter(|| legal_moves(black_box(&q))));
    c.bench_function("canonicalize 6x4", |b| b.iter(|| canonicalize(black_box(&q))));
}

criterion_group!(benches, search, moves);
criterion_main!(benches);
