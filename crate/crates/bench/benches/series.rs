use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use prop_core::selftest::power_of_two_relator;
use prop_core::{fox_derivative, magnus_expand, GroupWord, Prime};

fn magnus(c: &mut Criterion) {
    let two = Prime::new(2).unwrap();
    let r = power_of_two_relator();
    let mut group = c.benchmark_group("magnus_expand");
    group.sample_size(10);
    for n in [4usize, 6, 8] {
        group.bench_with_input(BenchmarkId::new("power_of_two_relator", n), &n, |b, &n| {
            b.iter(|| magnus_expand(black_box(&r), two, n, 3).unwrap())
        });
    }
    group.finish();
}

fn series_mul(c: &mut Criterion) {
    let p = Prime::new(3).unwrap();
    let u = magnus_expand(&GroupWord::from_syllables([(0, 1), (1, -2), (2, 1)]), p, 6, 3).unwrap();
    let v = magnus_expand(&GroupWord::from_syllables([(2, 2), (0, -1), (1, 1)]), p, 6, 3).unwrap();
    c.bench_function("series_mul_d3_N6", |b| b.iter(|| black_box(&u).mul(black_box(&v)).unwrap()));
}

fn fox(c: &mut Criterion) {
    let p = Prime::new(2).unwrap();
    let r = power_of_two_relator();
    c.bench_function("fox_derivative_power_of_two_relator", |b| {
        b.iter(|| fox_derivative(black_box(&r), 0, 3, p).unwrap())
    });
}

criterion_group!(benches, magnus, series_mul, fox);
criterion_main!(benches);
