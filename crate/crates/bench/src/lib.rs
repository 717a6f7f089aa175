//! Seeded synthetic graphs for the benchmarks.

use linkbench_core::rng;
use linkbench_core::Graph;
use rand::Rng;

/// G(n, p) random graph.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng::stream(seed, &[rng::tag("erdos_renyi")]);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// Preferential attachment: every new node links to `m` distinct earlier
/// nodes chosen proportionally to degree.
pub fn preferential_attachment(n: usize, m: usize, seed: u64) -> Graph {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut r = rng::stream(seed, &[rng::tag("preferential")]);
    let mut edges = Vec::new();
    let mut ends: Vec<usize> = Vec::new();
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    for u in m + 1..n {
        let mut picked: Vec<usize> = Vec::with_capacity(m);
        while picked.len() < m {
            let v = ends[r.random_range(0..ends.len())];
            if !picked.contains(&v) {
                picked.push(v);
            }
        }
        for v in picked {
            edges.push((v, u));
            ends.extend([u, v]);
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let g = preferential_attachment(100, 3, 1);
        assert_eq!(g.node_count(), 100);
        assert_eq!(g.edge_count(), 6 + 96 * 3);
        assert_eq!(erdos_renyi(30, 0.0, 1).edge_count(), 0);
        assert_eq!(erdos_renyi(10, 1.0, 1).edge_count(), 45);
    }
}
