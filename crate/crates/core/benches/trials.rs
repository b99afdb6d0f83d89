use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ungarian::poset::{order_ideal_lattice, FinitePoset};
use ungarian::sim::{simulate_outcomes, ChainParams, Executor, LatticeChain};
use ungarian::weak::WeakChain;

const EXECUTORS: [(&str, Executor); 2] = [("sequential", Executor::Sequential), ("parallel", Executor::Parallel)];

fn weak_trials(c: &mut Criterion) {
    let mut g = c.benchmark_group("weak_n64_500_trials");
    g.sample_size(10);
    let chain = WeakChain { n: 64, p: 0.5 };
    let params = ChainParams::new(0.5, 7, 500);
    for (name, exec) in EXECUTORS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(simulate_outcomes(&chain, &params, exec).unwrap()))
        });
    }
    g.finish();
}

fn ideal_lattice_trials(c: &mut Criterion) {
    // J([3] x [4]), 35 elements
    let mut rel = Vec::new();
    for i in 0..3 {
        for j in 0..4 {
            let v = 4 * i + j;
            if j + 1 < 4 {
                rel.push((v, v + 1));
            }
            if i + 1 < 3 {
                rel.push((v, v + 4));
            }
        }
    }
    let p = FinitePoset::from_covers(12, &rel).unwrap();
    let l = order_ideal_lattice(&p, 1 << 12).unwrap();
    let chain = LatticeChain { lattice: &l, p: 0.5 };
    let params = ChainParams::new(0.5, 7, 20_000);

    let mut g = c.benchmark_group("grid_3x4_20000_trials");
    g.sample_size(10);
    for (name, exec) in EXECUTORS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(simulate_outcomes(&chain, &params, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, weak_trials, ideal_lattice_trials);
criterion_main!(benches);
