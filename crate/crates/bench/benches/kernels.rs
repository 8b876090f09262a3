use criterion::{criterion_group, criterion_main, Criterion};
use cubicdom::discharge::apply_rules_fixpoint;
use cubicdom::discharge::generate::random_config;
use cubicdom::graph::families::cycle;
use cubicdom::reductions::reduce_default;
use cubicdom::solver::{mdom_exact, DEFAULT_BUDGET};
use cubicdom_bench::cubic_fixture;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn solver(c: &mut Criterion) {
    let g = cubic_fixture(20, 7);
    c.bench_function("mdom_exact/cubic20", |b| {
        b.iter(|| mdom_exact(black_box(&g), DEFAULT_BUDGET))
    });
}

fn reductions(c: &mut Criterion) {
    let ring = cycle(30);
    c.bench_function("reduce_default/cycle30", |b| {
        b.iter(|| reduce_default(black_box(&ring)))
    });
    let g = cubic_fixture(20, 7);
    c.bench_function("reduce_default/cubic20", |b| b.iter(|| reduce_default(black_box(&g))));
}

fn discharge(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = random_config(&mut rng, 16, 12);
    let artifacts = cfg.artifacts();
    c.bench_function("apply_rules_fixpoint/k16", |b| {
        b.iter(|| apply_rules_fixpoint(cfg.k, black_box(&artifacts)))
    });
}

criterion_group!(benches, solver, reductions, discharge);
criterion_main!(benches);
