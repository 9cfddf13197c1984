use std::hint::black_box;

use berge_core::harness::{gen_random_hypergraph, EdgeSizeLaw, GenParams};
use berge_core::parity::criterion_scan;
use berge_core::{
    find_2k_factor, max_matching, BipartiteGraph, Budget, DegreeSpec, GeneralGraph, Hypergraph,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn petersen() -> Vec<(usize, usize)> {
    (0..5)
        .map(|i| (i, (i + 1) % 5))
        .chain((0..5).map(|i| (i, i + 5)))
        .chain((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)))
        .collect()
}

fn random(n: usize, m: usize, seed: u64) -> Hypergraph {
    gen_random_hypergraph(&GenParams {
        n,
        m,
        sizes: EdgeSizeLaw::Range { lo: 2, hi: 4 },
        seed,
        connected: true,
    })
    .unwrap()
}

fn toughness(c: &mut Criterion) {
    let mut group = c.benchmark_group("toughness");
    for n in [10, 14, 18] {
        let h = random(n, 2 * n, n as u64);
        group.bench_with_input(BenchmarkId::new("hypergraph", n), &h, |b, h| {
            b.iter(|| black_box(h).toughness().unwrap())
        });
        let g = BipartiteGraph::incidence(&h);
        group.bench_with_input(BenchmarkId::new("y_toughness", n), &g, |b, g| {
            b.iter(|| black_box(g).y_toughness().unwrap())
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("criterion_scan");
    group.sample_size(10);
    let spec = DegreeSpec::new(2).unwrap();
    for (n, m) in [(5, 5), (6, 7), (7, 8)] {
        let g = BipartiteGraph::incidence(&random(n, m, 7));
        group.bench_with_input(BenchmarkId::from_parameter(n + m), &g, |b, g| {
            b.iter(|| criterion_scan(black_box(g), &spec, &Budget::default()).unwrap())
        });
    }
    group.finish();
}

fn matching(c: &mut Criterion) {
    let g = GeneralGraph::new(10, petersen()).unwrap();
    c.bench_function("max_matching/petersen", |b| {
        b.iter(|| max_matching(black_box(&g)))
    });
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_2k_factor");
    let spec = DegreeSpec::new(2).unwrap();
    for n in [8, 16, 32] {
        let g = BipartiteGraph::incidence(&random(n, 3 * n, 11));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| find_2k_factor(black_box(g), &spec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, toughness, scan, matching, solver);
criterion_main!(benches);
