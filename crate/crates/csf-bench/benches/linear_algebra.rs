use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use csf_core::gen;

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [32usize, 128, 512] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let m = gen::random_matrix(&mut rng, n, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.rank()))
        });
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_basis");
    for n in [32usize, 128] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let m = gen::random_matrix(&mut rng, n, n + n / 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.kernel_basis()))
        });
    }
    group.finish();
}

fn bench_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("graded_homology");
    for max_dim in [8usize, 16] {
        let mut rng = ChaCha8Rng::seed_from_u64(max_dim as u64);
        let complex = gen::random_graded_complex(&mut rng, 8, max_dim);
        group.bench_with_input(BenchmarkId::from_parameter(max_dim), &complex, |b, cx| {
            b.iter(|| {
                for d in 0..8 {
                    black_box(cx.homology(d).dim);
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_rank, bench_kernel, bench_homology);
criterion_main!(benches);
