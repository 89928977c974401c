use criterion::{criterion_group, criterion_main, Criterion};
use frobrec_bench::cases;
use frobrec_core::{reconstruct, sweep_residuals};

fn bench_reconstruct(c: &mut Criterion) {
    let mut group = c.benchmark_group("reconstruct");
    group.sample_size(10);
    for (orb, m) in cases() {
        group.bench_function(format!("{orb} m<={m}"), |b| {
            b.iter(|| reconstruct(&orb, m, None).expect("reconstruction"))
        });
    }
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (orb, m) in cases() {
        let r = reconstruct(&orb, m, None).expect("reconstruction");
        group.bench_function(format!("{orb} m<={m}"), |b| {
            b.iter(|| sweep_residuals(&r.potential, m).expect("sweep"))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_reconstruct, bench_sweep);
criterion_main!(benches);
