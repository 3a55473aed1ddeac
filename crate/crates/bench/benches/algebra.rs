use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetahull_bench::{quartic, M_QUARTIC, TWO_OVALS};
use thetahull_core::exactpoly::{resultant, Var};
use thetahull_core::quartic::{bitangents, check_quartic};
use thetahull_core::roots::{complex_roots, isolate_real_roots};
use thetahull_core::thetacount::{brute_force_real_theta, count_real_theta, CurveTopology};

fn elimination(c: &mut Criterion) {
    let f = quartic(M_QUARTIC);
    let fy = f.derivative(Var::Y);
    c.bench_function("resultant f, df/dy", |b| b.iter(|| resultant(black_box(&f), black_box(&fy), Var::Y)));
    let disc = resultant(&f, &fy, Var::Y).unwrap().squarefree();
    c.bench_function("isolate real roots of the x-discriminant", |b| b.iter(|| isolate_real_roots(black_box(&disc))));
    c.bench_function("complex roots of the x-discriminant", |b| b.iter(|| complex_roots(black_box(&disc), 1e-10)));
}

fn bitangent_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("bitangents");
    group.sample_size(10);
    for (name, text) in [("two ovals", TWO_OVALS), ("M-quartic", M_QUARTIC)] {
        let q = check_quartic(&quartic(text)).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| bitangents(&q, &mut ChaCha8Rng::seed_from_u64(1)).unwrap())
        });
    }
    group.finish();
}

fn theta_counts(c: &mut Criterion) {
    let t = CurveTopology::new(6, 7, true).unwrap();
    c.bench_function("closed-form counts, genus 6", |b| b.iter(|| count_real_theta(black_box(&t))));
    c.bench_function("enumerated counts, genus 6", |b| b.iter(|| brute_force_real_theta(black_box(&t))));
}

criterion_group!(benches, elimination, bitangent_sets, theta_counts);
criterion_main!(benches);
