use std::path::PathBuf;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use procmatch_bench::{process_text, workflow_net, TOY_VOCAB};
use procmatch_core::{
    check_soundness, load_embeddings, match_nets, rank_references, translate, MatchConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDER_FULFILLMENT: &str = "The customer places an order, the system checks inventory. \
    If the stock is available, the order is confirmed and packed. If the stock is not available, \
    a purchase order is created, goods are received, and then the order is shipped to the customer.";

fn translation(c: &mut Criterion) {
    let mut group = c.benchmark_group("translate");
    group.bench_function("order_fulfillment", |b| {
        b.iter(|| translate(black_box(ORDER_FULFILLMENT)))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for sentences in [10, 100] {
        let text = process_text(&mut rng, sentences);
        group.bench_with_input(BenchmarkId::new("generated", sentences), &text, |b, t| {
            b.iter(|| translate(t))
        });
    }
    group.finish();
}

fn soundness(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_soundness");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for size in [8, 16, 32] {
        let net = workflow_net(&mut rng, size, TOY_VOCAB, "bench");
        group.bench_with_input(BenchmarkId::from_parameter(size), &net, |b, n| {
            b.iter(|| check_soundness(n, 10_000).unwrap())
        });
    }
    group.finish();
}

fn matching(c: &mut Criterion) {
    let table = load_embeddings(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/toy_embeddings.txt"),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let business = workflow_net(&mut rng, 20, TOY_VOCAB, "business");
    let reference = workflow_net(&mut rng, 20, TOY_VOCAB, "reference");
    c.bench_function("match_nets/20", |b| {
        b.iter(|| match_nets(&business, &reference, &table, MatchConfig::default()))
    });
    let library: Vec<_> = (0..50)
        .map(|i| workflow_net(&mut rng, 20, TOY_VOCAB, &format!("r{i}")))
        .collect();
    c.bench_function("rank_references/50", |b| {
        b.iter(|| rank_references(&business, &library, &table, MatchConfig::default()))
    });
}

criterion_group!(benches, translation, soundness, matching);
criterion_main!(benches);
