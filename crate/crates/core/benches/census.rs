//! Sequential versus parallel execution on the census hot paths.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skewmate::census::run_shard;
use skewmate::graph::enumerate_all;
use skewmate::spectral::fingerprint;
use skewmate::Execution;
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn shard_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("shard_scan_n5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(run_shard(5, 0, 1, exec).unwrap().len()))
        });
    }
    group.finish();
}

fn fingerprint_batch(c: &mut Criterion) {
    let graphs: Vec<_> = enumerate_all(5).unwrap().step_by(7).collect();
    let mut group = c.benchmark_group("fingerprint_batch_n5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(exec.map(graphs.clone(), |g| fingerprint(&g).digest()).len()))
        });
    }
    group.finish();
}

criterion_group!(benches, shard_scan, fingerprint_batch);
criterion_main!(benches);
