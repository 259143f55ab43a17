//! Throughput of the main pipeline stages.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use punctel::builtin_registry;
use punctel::css::distances;
use punctel::oracle::{CodeOracle, DecodeMode};
use punctel::puncture::{apply_steps, parse_steps, replay};
use punctel::purification::purify;
use punctel::reliability::{f0_grid, find_crossing, sweep};

const LINEAGE: &str = "(0|1)@1,(0|1)@2,(0|1)@9,(0|1)@11,(1|0)@6,(1|0)@8,(1|0)@10,(1|0)@12,(1|0)@13";

fn linear_algebra(c: &mut Criterion) {
    let base = builtin_registry().get("base-17").unwrap();
    c.bench_function("distances base-17", |b| {
        b.iter(|| distances(black_box(base.h1()), black_box(base.h2())).unwrap())
    });
    let steps = parse_steps(LINEAGE).unwrap();
    let derived = apply_steps(base, &steps).unwrap();
    c.bench_function("replay base-17 -> punct-8", |b| {
        b.iter(|| replay(black_box(derived.lineage()), builtin_registry()).unwrap())
    });
}

fn reliability(c: &mut Criterion) {
    let grid = f0_grid(0.80, 1.00, 0.001).unwrap();
    c.bench_function("default sweep (4020 points)", |b| {
        b.iter(|| sweep(builtin_registry(), black_box(&grid), &[0, 1, 2, 3]).unwrap())
    });
    let base = builtin_registry().get("base-17").unwrap();
    c.bench_function("crossing base-17 r=3", |b| {
        b.iter(|| find_crossing(base, 3, black_box(1e-6), (0.8, 1.0)).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let ch = purify(0.95, 3).unwrap().to_channel();
    let base = CodeOracle::new(builtin_registry().get("base-17").unwrap()).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("exact joint lookup base-17", |b| {
        b.iter(|| {
            base.exact_joint_error(black_box(&ch), DecodeMode::Lookup)
                .unwrap()
        })
    });
    let p8 = CodeOracle::new(builtin_registry().get("punct-8").unwrap()).unwrap();
    group.bench_function("monte carlo punct-8 (10^5 samples)", |b| {
        b.iter(|| p8.mc_logical_error(black_box(&ch), 100_000, 1, 8).unwrap())
    });
    group.finish();
}

criterion_group!(benches, linear_algebra, reliability, oracle);
criterion_main!(benches);
