use criterion::{criterion_group, criterion_main, Criterion};
use zsindex_core::harness::verify_modulus;
use zsindex_core::SweepConfig;

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_modulus");
    group.sample_size(10);
    for n in [35u64, 77, 101] {
        group.bench_function(n.to_string(), |b| {
            b.iter(|| verify_modulus(n, &SweepConfig::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
