use criterion::{criterion_group, criterion_main, Criterion};
use linkbench_bench::preferential_attachment;
use linkbench_core::subgraph::{drnl, extract_h_subgraph, extract_k_subgraph, wl_label};
use linkbench_core::Pair;

fn subgraphs(c: &mut Criterion) {
    let g = preferential_attachment(2000, 4, 3);
    let pairs: Vec<Pair> = g.edges().step_by(40).take(100).collect();
    c.bench_function("wlnm_encode_k10_100_links", |b| {
        b.iter(|| {
            for p in &pairs {
                let sg = extract_k_subgraph(&g, p.u, p.v, 10).unwrap();
                std::hint::black_box(wl_label(&sg, 10));
            }
        })
    });
    c.bench_function("drnl_h1_100_links", |b| {
        b.iter(|| {
            for p in &pairs {
                let sg = extract_h_subgraph(&g, p.u, p.v, 1).unwrap();
                std::hint::black_box(drnl(&sg));
            }
        })
    });
}

criterion_group!(benches, subgraphs);
criterion_main!(benches);
