//! Compares the rayon-parallel dataset run against the sequential fallback.
//!
//! `cargo bench` uses the default features (parallel on); rerun with
//! `--no-default-features` to measure the pure sequential build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use votefuse::fusion::{run_dataset, run_dataset_sequential, FusionConfig};
use votefuse::schemes::Scheme;
use votefuse::synth::generate_synthetic;

fn bench_run_dataset(c: &mut Criterion) {
    let (matrices, _truth) = generate_synthetic(8, 200, 200, 0.3, 7).expect("valid synth config");

    let mut group = c.benchmark_group("run_dataset_200x200x8");
    for scheme in [Scheme::Plurality, Scheme::Condorcet, Scheme::Borda, Scheme::Irv] {
        let config = FusionConfig::new(scheme);
        group.bench_with_input(
            BenchmarkId::new("parallel", scheme),
            &config,
            |b, config| b.iter(|| run_dataset(&matrices, config).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", scheme),
            &config,
            |b, config| b.iter(|| run_dataset_sequential(&matrices, config).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_run_dataset);
criterion_main!(benches);
