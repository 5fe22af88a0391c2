use balroute::arborescence::{find_arborescence, ArborescenceOptions};
use balroute::balance::{check_balance, imbalance_exact};
use balroute::decomposition::{cluster_directed, ClusterOptions};
use balroute::generators::{planted_cut, random_balanced, random_eulerian, random_strongly_connected, seeded_rng};
use balroute::maxflow::{max_st_flow, ApproxRouter, ExactRouter};
use balroute::routing::{find_routing, worst_case_ratio, RoutingOptions};
use balroute::sparsest::{sparsest_cut, SparsestCutOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn balance(c: &mut Criterion) {
    let mut group = c.benchmark_group("balance");
    for n in [8, 12] {
        let g = random_strongly_connected(n, 0.35, 0.5, 4.0, &mut seeded_rng(1));
        group.bench_with_input(BenchmarkId::new("imbalance_exact", n), &g, |b, g| {
            b.iter(|| imbalance_exact(black_box(g)).unwrap())
        });
    }
    let g = random_balanced(10, 10, 2.0, &mut seeded_rng(2));
    group.bench_function("check_balance/10", |b| {
        b.iter(|| check_balance(black_box(&g), 3.0, 0.1, &ApproxRouter::default()).unwrap())
    });
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decomposition");
    for n in [200, 1000] {
        let g = random_eulerian(n, n / 2, 4.0, &mut seeded_rng(3));
        group.bench_with_input(BenchmarkId::new("cluster_directed", n), &g, |b, g| {
            let mut rng = seeded_rng(4);
            b.iter(|| cluster_directed(black_box(g), 20.0, &mut rng, ClusterOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn arborescence(c: &mut Criterion) {
    let mut group = c.benchmark_group("arborescence");
    for n in [64, 256] {
        let g = random_eulerian(n, n / 2, 4.0, &mut seeded_rng(5));
        group.bench_with_input(BenchmarkId::new("find_arborescence", n), &g, |b, g| {
            let mut rng = seeded_rng(6);
            b.iter(|| find_arborescence(black_box(g), 0, &mut rng, ArborescenceOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn routing(c: &mut Criterion) {
    let mut group = c.benchmark_group("routing");
    group.sample_size(10);
    let g = random_eulerian(32, 16, 4.0, &mut seeded_rng(7));
    group.bench_function("find_routing/32", |b| {
        let mut rng = seeded_rng(8);
        b.iter(|| find_routing(black_box(&g), 0, &mut rng, RoutingOptions::default()).unwrap())
    });
    let routing = find_routing(&g, 0, &mut seeded_rng(8), RoutingOptions::default())
        .unwrap()
        .routing;
    group.bench_function("worst_case_ratio/32", |b| {
        b.iter(|| worst_case_ratio(black_box(&g), &routing).unwrap())
    });
    group.finish();
}

fn max_flow(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_flow");
    group.sample_size(10);
    let g = random_balanced(10, 10, 2.0, &mut seeded_rng(9));
    for eps in [0.5, 0.1] {
        group.bench_with_input(BenchmarkId::new("max_st_flow/10", eps), &eps, |b, &eps| {
            b.iter(|| max_st_flow(black_box(&g), 0, 9, eps).unwrap())
        });
    }
    group.finish();
}

fn sparsest(c: &mut Criterion) {
    let mut group = c.benchmark_group("sparsest_cut");
    group.sample_size(10);
    let (g, _) = planted_cut(32, 0.5, 1, &mut seeded_rng(10));
    group.bench_function("exact_router/32", |b| {
        b.iter(|| sparsest_cut(black_box(&g), 0.1, &ExactRouter, SparsestCutOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    balance,
    decomposition,
    arborescence,
    routing,
    max_flow,
    sparsest
);
criterion_main!(benches);
