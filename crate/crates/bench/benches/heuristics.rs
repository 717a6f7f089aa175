use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use linkbench_bench::preferential_attachment;
use linkbench_core::heuristics::{score_all, HeuristicId};
use linkbench_core::split::sample_negatives;
use linkbench_core::Pair;

fn heuristics(c: &mut Criterion) {
    let g = preferential_attachment(2000, 4, 7);
    let mut pairs: Vec<Pair> = g.edges().take(500).collect();
    pairs.extend(sample_negatives(&g, 500, &[], 7).unwrap().iter());
    let mut group = c.benchmark_group("heuristics_1000_pairs");
    for h in HeuristicId::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(h), &h, |b, &h| {
            b.iter(|| score_all(&g, h, &pairs).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, heuristics);
criterion_main!(benches);
