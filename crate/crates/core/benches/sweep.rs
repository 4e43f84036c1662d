use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use quadric_core::config::Config;
use quadric_core::hypersurface::{analyze, conic, ConicParams};
use quadric_core::par;

/// Small slice of the conic family, the workload an atlas sweep runs.
fn grid() -> Vec<ConicParams> {
    let mut out = Vec::new();
    for alpha in [0, 1] {
        for beta in [0, 1] {
            for (a, b, c) in [(1, 0, 0), (1, 1, 0), (1, 1, 1), (3, 3, 4)] {
                out.push(ConicParams::from_i64([alpha, beta, 0], [a, b, c]));
            }
        }
    }
    out
}

fn run(p: &ConicParams, cfg: &Config) -> Option<usize> {
    let q = conic(p, cfg).ok()?;
    analyze(&q, cfg).ok().map(|r| r.ungraded_block_count)
}

fn sweep(c: &mut Criterion) {
    let cfg = Config::default();
    let points = grid();
    let mut group = c.benchmark_group("conic-sweep");
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new("sequential", points.len()), &points, |b, pts| {
        b.iter(|| par::map_sequential(pts, |p| run(p, &cfg)))
    });
    #[cfg(feature = "parallel")]
    group.bench_with_input(BenchmarkId::new("parallel", points.len()), &points, |b, pts| {
        b.iter(|| par::map_parallel(pts, |p| run(p, &cfg)))
    });
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
