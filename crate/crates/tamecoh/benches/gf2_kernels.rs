//! Benchmarks for the GF(2) kernels: row reduction and kernel extraction on
//! bit-packed matrices of the sizes arising in enveloping-algebra
//! resolutions.  Compare `--features parallel` (default) against
//! `--no-default-features` to measure the data-parallel speedup.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use tamecoh::exactlin::{kernel, rank, Field, Matrix};

/// Deterministic pseudo-random GF(2) matrix (splitmix-style stream).
fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut s = seed;
    let mut next = move || {
        s = s.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let mut m = Matrix::zero(Field::GF2, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if next() & 1 == 1 {
                m.set(i, j, 1);
            }
        }
    }
    m
}

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2_rank");
    group.sample_size(10);
    for &n in &[256usize, 1024, 2048] {
        let m = random_matrix(n, n, 42);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| rank(black_box(m)))
        });
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2_kernel");
    group.sample_size(10);
    // Wide matrices, as in boundary maps of enveloping-algebra resolutions.
    for &n in &[256usize, 1024] {
        let m = random_matrix(n, 2 * n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| kernel(black_box(m)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_rank, bench_kernel);
criterion_main!(benches);
