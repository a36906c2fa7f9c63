use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dimer_core::fixtures::fig_nested;
use dimer_core::matchings::enumerate_perfect_matchings_with;
use dimer_core::semigroup::vertex_image_sets_with;
use dimer_core::Execution;

fn image_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertex_image_sets");
    group.sample_size(10);
    let contraction = fig_nested(3).contraction().expect("fixture contracts");
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::new(format!("{exec:?}"), 8),
            &exec,
            |b, &exec| b.iter(|| vertex_image_sets_with(&contraction, 8, exec)),
        );
    }
    group.finish();
}

fn matchings(c: &mut Criterion) {
    let mut group = c.benchmark_group("perfect_matchings");
    group.sample_size(10);
    let quiver = fig_nested(3).quiver;
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::new(format!("{exec:?}"), 3),
            &exec,
            |b, &exec| {
                b.iter(|| {
                    enumerate_perfect_matchings_with(&quiver, 1_000_000, exec).expect("within cap")
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, image_sets, matchings);
criterion_main!(benches);
