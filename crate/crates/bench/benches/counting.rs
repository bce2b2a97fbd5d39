use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use peaklab::{beta, count_fast, count_via_words, Composition, Engine, Oracle, SignWord};
use peaklab_bench::maximal_of;

fn bench_beta(c: &mut Criterion) {
    let mut group = c.benchmark_group("beta_alternating");
    for n in [10usize, 20, 40] {
        let word: SignWord = "+-".repeat(n / 2).chars().take(n - 1).collect::<String>().parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &word, |b, w| b.iter(|| beta(black_box(w))));
    }
    group.finish();
}

fn bench_count_fast(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_fast");
    for n in [9usize, 14, 20, 30, 40] {
        let comp = maximal_of(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &comp, |b, comp| {
            b.iter(|| count_fast(black_box(comp)))
        });
    }
    group.finish();
}

fn bench_word_sum(c: &mut Criterion) {
    let comp: Composition = "4,4,4,2".parse().unwrap();
    c.bench_function("count_via_words_4442", |b| b.iter(|| count_via_words(black_box(&comp))));
    c.bench_function("count_fast_4442", |b| b.iter(|| count_fast(black_box(&comp))));
}

fn bench_bruteforce(c: &mut Criterion) {
    let oracle = Oracle::default();
    let comp = maximal_of(8);
    c.bench_function("oracle_count_n8", |b| b.iter(|| oracle.count(black_box(&comp)).unwrap()));
    c.bench_function("oracle_walk_n8", |b| b.iter(|| oracle.count_by_walk(black_box(&comp)).unwrap()));
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_maximal_n18");
    group.sample_size(10);
    for prune in [false, true] {
        let label = if prune { "pruned" } else { "plain" };
        // a fresh engine per run so the count memo does not carry over
        group.bench_function(label, |b| b.iter(|| Engine::new().exact_maximal(black_box(18), prune).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_beta, bench_count_fast, bench_word_sum, bench_bruteforce, bench_search);
criterion_main!(benches);
