//! Parallel vs. sequential comparison of the numeric sampling path.

use criterion::{criterion_group, criterion_main, Criterion};
use kn_identities::positivity_violations;
use symrat::ParamSet;

fn bench_positivity(c: &mut Criterion) {
    let params = ParamSet::new(symrat::rat(1, 1), symrat::rat(1, 10), symrat::rat(3, 10))
        .expect("subextremal");
    let mut group = c.benchmark_group("positivity_sampling");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| positivity_violations(&params, 200, 7, false).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| positivity_violations(&params, 200, 7, true).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_positivity);
criterion_main!(benches);
