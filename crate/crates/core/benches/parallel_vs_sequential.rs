use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fuzzhyper::chains::{chain_mixing_at, sweep_deltas};
use fuzzhyper::config::Budget;
use fuzzhyper::dynamics::{fuzzy_grid, SystemMap};
use fuzzhyper::fuzzy::FuzzyMetric;
use fuzzhyper::par;
use fuzzhyper::rational::q;
use fuzzhyper::shadowing::{
    certify_example, example_connected_chain, shadowing_equivalence_harness, sweep_eps,
};
use fuzzhyper::{gen, suite};

const MODES: [(&str, bool); 2] = [("parallel", false), ("sequential", true)];

fn grid_matrix(c: &mut Criterion) {
    let mut rng = gen::rng(7);
    let space = Arc::new(gen::random_space(&mut rng, 4, 8));
    let sys = SystemMap::identity(space);
    let mut group = c.benchmark_group("grid_m4_n4");
    group.sample_size(10);
    for metric in [FuzzyMetric::End, FuzzyMetric::Skorokhod] {
        for (mode, seq) in MODES {
            group.bench_with_input(BenchmarkId::new(metric.name(), mode), &seq, |b, &seq| {
                par::set_sequential(seq);
                b.iter(|| fuzzy_grid(&sys, 4, metric, 10_000).unwrap());
            });
        }
    }
    par::set_sequential(false);
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let ex = example_connected_chain(16).unwrap();
    let budget = Budget::default();
    let mut group = c.benchmark_group("certify_connected_k16");
    group.sample_size(10);
    for (mode, seq) in MODES {
        group.bench_function(mode, |b| {
            par::set_sequential(seq);
            b.iter(|| certify_example(&ex, q(1, 5), q(1, 64), &budget).unwrap());
        });
    }
    par::set_sequential(false);
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let systems = suite::small_systems(3);
    let mut rng = gen::rng(11);
    let space = Arc::new(gen::random_space(&mut rng, 4, 10));
    let tracked = gen::random_map(&mut rng, space);
    let budget = Budget::default();
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    for (mode, seq) in MODES {
        group.bench_function(BenchmarkId::new("mixing_small_systems", mode), |b| {
            par::set_sequential(seq);
            b.iter(|| {
                par::map(&systems, |sys| {
                    sweep_deltas(sys)
                        .into_iter()
                        .filter(|d| chain_mixing_at(sys, *d).unwrap().holds)
                        .count()
                })
            });
        });
        group.bench_function(BenchmarkId::new("shadowing_equivalence", mode), |b| {
            par::set_sequential(seq);
            b.iter(|| {
                shadowing_equivalence_harness(&tracked, &sweep_eps(tracked.space()), None, &budget)
            });
        });
    }
    par::set_sequential(false);
    group.finish();
}

criterion_group!(benches, grid_matrix, certificate, sweeps);
criterion_main!(benches);
