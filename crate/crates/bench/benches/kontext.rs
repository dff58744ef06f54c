use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kontext::greechie::{derive_bug_coordinatization, make_bug};
use kontext::qrng::sample;
use kontext::valuations::{classify, count_two_valued, propagate};
use kontext::PartialValuation;
use kontext_bench::{bug_chain, bug_sampler, star};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_two_valued");
    for n in [1, 2, 4] {
        let d = bug_chain(n);
        group.bench_with_input(BenchmarkId::new("bug_chain", n), &d, |b, d| {
            b.iter(|| count_two_valued(black_box(d)))
        });
    }
    for n in [3, 7, 12] {
        let d = star(n);
        group.bench_with_input(BenchmarkId::new("star", n), &d, |b, d| {
            b.iter(|| count_two_valued(black_box(d)))
        });
    }
    group.finish();
}

fn forcing(c: &mut Criterion) {
    let bug = make_bug();
    let contradictory = PartialValuation::new().with("c", true).with("b", true);
    c.bench_function("propagate_bug_contradiction", |b| {
        b.iter(|| propagate(black_box(&bug), black_box(&contradictory)))
    });
    let premise = PartialValuation::new().with("c", true);
    c.bench_function("classify_bug", |b| {
        b.iter(|| classify(black_box(&bug), black_box(&premise)))
    });
    c.bench_function("derive_bug_coordinatization", |b| {
        b.iter(derive_bug_coordinatization)
    });
}

fn sampling(c: &mut Criterion) {
    let config = bug_sampler(100_000);
    c.bench_function("sample_bug_pair_1e5", |b| {
        b.iter(|| sample(black_box(&config)))
    });
}

criterion_group!(benches, enumeration, forcing, sampling);
criterion_main!(benches);
