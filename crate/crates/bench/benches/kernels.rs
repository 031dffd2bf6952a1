use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sphertest_core::power::{simulate_sup, GridSpec};
use sphertest_core::sampler::sample_eigs_with;
use sphertest_core::{log_lr_exact, LrKind, Sampler, SpikedModel};

fn exact_lr(c: &mut Criterion) {
    let mut group = c.benchmark_group("log_lr_exact");
    for &p in &[50usize, 300] {
        let model = SpikedModel::null(p, 2 * p).unwrap().with_seed(1);
        let eigs = sample_eigs_with(&model, 0, Sampler::Bidiagonal).unwrap();
        for kind in [LrKind::Lambda, LrKind::Mu] {
            group.bench_with_input(BenchmarkId::new(kind.to_string(), p), &eigs, |b, e| {
                b.iter(|| log_lr_exact(black_box(e), 0.4, kind).unwrap())
            });
        }
    }
    group.finish();
}

fn sample_eigs(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_eigs");
    group.sample_size(20);
    for &p in &[100usize, 400] {
        let model = SpikedModel::new(p, 2 * p, 0.5).unwrap().with_seed(2);
        for sampler in [Sampler::Dense, Sampler::Bidiagonal] {
            let name = format!("{sampler:?}").to_lowercase();
            group.bench_with_input(BenchmarkId::new(name, p), &model, |b, m| {
                let mut rep = 0u64;
                b.iter(|| {
                    rep += 1;
                    sample_eigs_with(m, rep, sampler).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn sup_simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_sup");
    group.sample_size(10);
    for &points in &[100usize, 500] {
        let grid = GridSpec::new(6.0, points).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(points), &grid, |b, &g| {
            b.iter(|| simulate_sup(LrKind::Lambda, g, 10_000, 3, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exact_lr, sample_eigs, sup_simulation);
criterion_main!(benches);
