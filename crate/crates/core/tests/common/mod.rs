#![allow(dead_code)]

use std::collections::BTreeSet;

use linkbench_core::heuristics::HeuristicId;
use linkbench_core::rng;
use linkbench_core::{Graph, NodeId};
use rand::Rng;

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng::stream(seed, &[rng::tag("er")]);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Ring lattice (each node tied to its `k` nearest on either side) with a
/// fraction `beta` of edges rewired at random.
pub fn small_world(n: usize, k: usize, beta: f64, seed: u64) -> Graph {
    let mut r = rng::stream(seed, &[rng::tag("ws")]);
    let mut edges = Vec::new();
    for u in 0..n {
        for d in 1..=k {
            let v = (u + d) % n;
            if r.random_bool(beta) {
                let w = r.random_range(0..n);
                if w != u {
                    edges.push((u, w));
                    continue;
                }
            }
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Naive reference implementations over neighbor sets.
pub struct Naive {
    nb: Vec<BTreeSet<usize>>,
}

impl Naive {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut nb = vec![BTreeSet::new(); n];
        for a in 0..n {
            for b in 0..n {
                if a != b && g.has_edge(NodeId(a as u32), NodeId(b as u32)) {
                    nb[a].insert(b);
                }
            }
        }
        Naive { nb }
    }

    fn k(&self, x: usize) -> f64 {
        self.nb[x].len() as f64
    }

    fn cc(&self, z: usize) -> f64 {
        let ns: Vec<usize> = self.nb[z].iter().copied().collect();
        if ns.len() < 2 {
            return 0.0;
        }
        let mut t = 0;
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                if self.nb[ns[i]].contains(&ns[j]) {
                    t += 1;
                }
            }
        }
        t as f64 / (ns.len() * (ns.len() - 1) / 2) as f64
    }

    fn div(a: f64, b: f64) -> f64 {
        if b == 0.0 {
            0.0
        } else {
            a / b
        }
    }

    pub fn score(&self, h: HeuristicId, x: usize, y: usize) -> f64 {
        let cn: BTreeSet<usize> = self.nb[x].intersection(&self.nb[y]).copied().collect();
        let c = cn.len() as f64;
        let union = self.nb[x].union(&self.nb[y]).count() as f64;
        let (kx, ky) = (self.k(x), self.k(y));
        let inner = |z: usize| self.nb[z].intersection(&cn).count() as f64;
        match h {
            HeuristicId::CN => c,
            HeuristicId::AA => cn
                .iter()
                .map(|&z| {
                    let l = self.k(z).ln();
                    if l == 0.0 {
                        0.0
                    } else {
                        1.0 / l
                    }
                })
                .sum(),
            HeuristicId::RA => cn.iter().map(|&z| 1.0 / self.k(z)).sum(),
            HeuristicId::PA => kx * ky,
            HeuristicId::JA => Self::div(c, union),
            HeuristicId::SA => Self::div(c, (kx * ky).sqrt()),
            HeuristicId::SO => Self::div(2.0 * c, kx + ky),
            HeuristicId::HPI => Self::div(c, kx.max(ky)),
            HeuristicId::HDI => Self::div(c, kx.min(ky)),
            HeuristicId::LLHN => Self::div(c, kx * ky),
            HeuristicId::IA => cn.iter().map(|&z| (inner(z) + 2.0) / self.k(z)).sum(),
            HeuristicId::CAR => cn.iter().map(|&z| 1.0 + inner(z) / 2.0).sum(),
            HeuristicId::CCLP => cn.iter().map(|&z| self.cc(z)).sum(),
        }
    }
}
