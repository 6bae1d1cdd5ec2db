use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use prop_core::obstruction::{search_obstruction, SearchOptions};
use prop_core::selftest::{example_relator, sum_of_squares_relator};
use prop_core::{build_quotient, leading_form, Presentation, Prime, QuotientOptions};

fn quotient(c: &mut Criterion) {
    let two = Prime::new(2).unwrap();
    let pres = Presentation::with_default_names(two, 2, vec![example_relator(2)]).unwrap();
    let mut group = c.benchmark_group("build_quotient");
    group.sample_size(10);
    for n in [4usize, 6, 8] {
        group.bench_with_input(BenchmarkId::new("example_relator", n), &n, |b, &n| {
            b.iter(|| build_quotient(black_box(&pres), n, QuotientOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn obstruction(c: &mut Criterion) {
    let two = Prime::new(2).unwrap();
    let eta = leading_form(&sum_of_squares_relator(6), two, 2, 6).unwrap();
    let mut group = c.benchmark_group("search_obstruction_squares6");
    group.sample_size(10);
    for threads in [1usize, 4] {
        group.bench_with_input(BenchmarkId::new("m3_threads", threads), &threads, |b, &threads| {
            let opts = SearchOptions { threads, override_guardrail: false };
            b.iter(|| search_obstruction(black_box(&eta), 6, 3, opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, quotient, obstruction);
criterion_main!(benches);
