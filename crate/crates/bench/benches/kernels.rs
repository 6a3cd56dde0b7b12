use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use emitpair_bench::{packet_pair, scene};
use emitpair_core::oracle::{kernel_bruteforce, random_psd_table, KernelKind, RandomTableSpec};
use emitpair_core::scenario::{fig2_curves, Fig2Params};
use emitpair_core::{
    build_overlap_table, kernel_superposition, overlap, overlap_quadrature, ExchangeSymmetry, GridSpec,
    MixtureExchange,
};

fn kernels(c: &mut Criterion) {
    let table = random_psd_table(7, RandomTableSpec::default());
    let mut g = c.benchmark_group("superposition_kernel");
    for sym in ExchangeSymmetry::BOTH {
        g.bench_with_input(BenchmarkId::new("closed_form", sym), &sym, |b, &sym| {
            b.iter(|| kernel_superposition(black_box(&table), sym).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("bruteforce", sym), &sym, |b, &sym| {
            b.iter(|| kernel_bruteforce(KernelKind::Superposition, black_box(&table), sym).unwrap())
        });
    }
    g.finish();
}

fn curves(c: &mut Criterion) {
    let params = Fig2Params::default();
    c.bench_function("fig2_curves_200", |b| {
        b.iter(|| fig2_curves(black_box(&params), MixtureExchange::On).unwrap())
    });
}

fn wavepackets(c: &mut Criterion) {
    let mut g = c.benchmark_group("gaussian_overlap");
    for dim in 1..=3 {
        let (a, b) = packet_pair(dim);
        g.bench_with_input(BenchmarkId::new("closed_form", dim), &dim, |bench, _| {
            bench.iter(|| overlap(black_box(&a), black_box(&b)).unwrap())
        });
    }
    let (a, b) = packet_pair(1);
    let grid = GridSpec::covering(&a, &b);
    g.bench_function("quadrature_1d", |bench| bench.iter(|| overlap_quadrature(&a, &b, &grid).unwrap()));
    g.finish();

    let s = scene();
    c.bench_function("build_overlap_table_3d", |b| b.iter(|| build_overlap_table(black_box(&s)).unwrap()));
}

criterion_group!(benches, kernels, curves, wavepackets);
criterion_main!(benches);
