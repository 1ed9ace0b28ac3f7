use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use genperm::egf::{touchard_series, xi_series, DEFAULT_CAPS};

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    group.sample_size(10);
    group.bench_function("touchard 12x12", |b| b.iter(|| touchard_series(black_box(12), 12)));
    group.bench_function("xi k=3 ell=2 default caps", |b| b.iter(|| xi_series(black_box(3), 2, DEFAULT_CAPS)));
    group.finish();
}

criterion_group!(benches, series);
criterion_main!(benches);
