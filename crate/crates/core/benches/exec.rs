use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dtower_core::cone::tower_multiset;
use dtower_core::dinv::{compute_d, compute_d_batch, DConfig};
use dtower_core::models;
use dtower_core::{Exec, KnotComplex};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn power(c: &KnotComplex, n: usize) -> KnotComplex {
    (1..n).fold(c.clone(), |acc, _| acc.tensor_product(c).unwrap())
}

fn d_invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("d");
    let inputs = [
        ("t34^2", power(&models::t34(), 2)),
        ("lht^3#t34", power(&models::lht(), 3).tensor_product(&models::t34()).unwrap()),
    ];
    for (name, knot) in &inputs {
        for (mode, exec) in MODES {
            let cfg = DConfig { exec, ..DConfig::default() };
            group.bench_with_input(BenchmarkId::new(mode, name), knot, |b, k| {
                b.iter(|| compute_d(black_box(k), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch");
    let knots: Vec<KnotComplex> = (1..=4).map(|n| power(&models::rht(), n)).collect();
    for (mode, exec) in MODES {
        let cfg = DConfig { exec, ..DConfig::default() };
        group.bench_function(mode, |b| b.iter(|| compute_d_batch(black_box(&knots), &cfg)));
    }
    group.finish();
}

fn borromean(c: &mut Criterion) {
    let mut group = c.benchmark_group("borromean");
    group.sample_size(10);
    for g in [2u32, 3] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, g), &g, |b, &g| {
                b.iter(|| tower_multiset(g, -1, i64::from(g) + 2, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, d_invariants, batch, borromean);
criterion_main!(benches);
