use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use thetahull_bench::bodies;
use thetahull_core::sepbodies::{facet_oracle, strongly_separated, support_functional, Orientation};

fn support(c: &mut Criterion) {
    let mut group = c.benchmark_group("support functional");
    for (n, points) in [(2, 200), (3, 100), (4, 50)] {
        let b = bodies(n, points);
        group.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| support_functional(black_box(b), Orientation::Nonnegative).unwrap())
        });
    }
    group.finish();
}

fn separation_and_oracle(c: &mut Criterion) {
    let b = bodies(3, 24);
    c.bench_function("strong separation, n = 3", |bench| bench.iter(|| strongly_separated(black_box(&b)).unwrap()));
    c.bench_function("facet oracle, n = 3", |bench| bench.iter(|| facet_oracle(black_box(&b)).unwrap()));
}

criterion_group!(benches, support, separation_and_oracle);
criterion_main!(benches);
