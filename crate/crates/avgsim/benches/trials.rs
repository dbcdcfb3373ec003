//! Throughput of Monte Carlo batches: sequential loop versus the rayon
//! fan-out used by default. Run with `cargo bench -p avgsim`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use avgsim::dynamics::{run_from, RunConfig};
use avgsim::graph::generate_clustered_regular;
use avgsim::trials::{run_trials, run_trials_sequential};

fn trial_batches(c: &mut Criterion) {
    let g = generate_clustered_regular(64, 8, 1, 2, 200).unwrap();
    let x0 = avgsim::dynamics::init_random_state(64, 5);
    let cfg = RunConfig::new(0.3, 2000).observe_every(2000);
    let body = |_i: usize, seed: u64| {
        let trace = run_from(&g, &x0, &cfg, seed);
        trace.rows.last().unwrap().z_norm_sq
    };

    let mut group = c.benchmark_group("trial-batch");
    for &trials in &[64usize, 256] {
        group.throughput(Throughput::Elements(trials as u64));
        group.bench_with_input(
            BenchmarkId::new("sequential", trials),
            &trials,
            |bench, &trials| {
                bench.iter(|| run_trials_sequential(trials, 99, body));
            },
        );
        group.bench_with_input(
            BenchmarkId::new("default", trials),
            &trials,
            |bench, &trials| {
                bench.iter(|| run_trials(trials, 99, body));
            },
        );
    }
    group.finish();
}

criterion_group!(benches, trial_batches);
criterion_main!(benches);
