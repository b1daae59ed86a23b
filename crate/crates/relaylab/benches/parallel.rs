//! Parallel vs. sequential throughput on the two embarrassingly parallel
//! workloads: a relay-position sweep and a random-channel fuzz run. With the
//! default `parallel` feature the driver fans out over rayon; the `_seq`
//! variants always run the plain iterator path, so the pair measures the
//! speedup (or, on a single hardware thread, the overhead) of the fan-out.

use criterion::{criterion_group, criterion_main, Criterion};
use relaylab::experiments::{
    position_sweep, position_sweep_seq, theorem_fuzz, theorem_fuzz_seq, SweepSpec,
};
use std::hint::black_box;

fn bench_position_sweep(c: &mut Criterion) {
    let spec = SweepSpec {
        step: 0.05,
        ..SweepSpec::default()
    };
    let mut group = c.benchmark_group("position_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| position_sweep(black_box(&spec)).expect("spec is valid"))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| position_sweep_seq(black_box(&spec)).expect("spec is valid"))
    });
    group.finish();
}

fn bench_theorem_fuzz(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem_fuzz");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| theorem_fuzz(black_box(42), black_box(500)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| theorem_fuzz_seq(black_box(42), black_box(500)))
    });
    group.finish();
}

criterion_group!(benches, bench_position_sweep, bench_theorem_fuzz);
criterion_main!(benches);
