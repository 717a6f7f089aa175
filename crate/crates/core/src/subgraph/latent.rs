//! Node embeddings from a truncated eigendecomposition of the adjacency
//! matrix, computed by seeded subspace iteration on each connected component.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, NodeId};
use crate::rng;

/// Extra columns carried through the iteration to speed up convergence.
const OVERSAMPLE: usize = 8;

/// Row-per-node embedding table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatentTable {
    dim: usize,
    data: Vec<f64>,
}

impl LatentTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.data.len() / self.dim.max(1)
    }

    pub fn row(&self, v: NodeId) -> &[f64] {
        &self.data[v.index() * self.dim..(v.index() + 1) * self.dim]
    }
}

/// Deterministic start value for row `i`, column `j` of a component basis.
fn start_entry(seed: u64, i: usize, j: usize) -> f64 {
    let x = rng::derive_seed(seed, &[rng::tag("latent"), i as u64, j as u64]);
    (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
}

/// Rank-`d_lat` factorization `A ≈ U |Λ| Uᵀ` of the adjacency of `train`,
/// returning rows of `U |Λ|^{1/2}` normalized to unit length. Each connected
/// component is factorized on its own; isolated nodes get zero rows.
pub fn latent_features(train: &Graph, d_lat: usize, iters: usize, seed: u64) -> Result<LatentTable> {
    let n = train.node_count();
    if d_lat == 0 || d_lat > n {
        return Err(Error::InvalidArgument(format!(
            "latent dimension {d_lat} must lie in 1..={n}"
        )));
    }
    let comp = connected_components(train);
    let count = comp.iter().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); count];
    for v in train.nodes() {
        members[comp[v.index()]].push(v);
    }
    let mut data = vec![0.0; n * d_lat];
    let mut local = vec![usize::MAX; n];
    for nodes in members.iter().filter(|m| m.len() >= 2) {
        for (i, v) in nodes.iter().enumerate() {
            local[v.index()] = i;
        }
        let s = nodes.len();
        let rank = d_lat.min(s);
        let q_cols = (rank + OVERSAMPLE).min(s);
        let matmul = |q: &DMatrix<f64>| -> DMatrix<f64> {
            let mut out = DMatrix::zeros(s, q.ncols());
            for (i, v) in nodes.iter().enumerate() {
                for &w in train.adj(*v) {
                    let j = local[w.index()];
                    for c in 0..q.ncols() {
                        out[(i, c)] += q[(j, c)];
                    }
                }
            }
            out
        };
        let mut q = DMatrix::from_fn(s, q_cols, |i, j| start_entry(seed, i, j));
        q = q.qr().q();
        for _ in 0..iters {
            q = matmul(&q).qr().q();
        }
        // Rayleigh-Ritz on the converged subspace
        let aq = matmul(&q);
        let t = q.transpose() * &aq;
        let t = (&t + t.transpose()) * 0.5;
        let eig = SymmetricEigen::new(t);
        let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        idx.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .abs()
                .total_cmp(&eig.eigenvalues[a].abs())
                .then(eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]))
        });
        for (col, &e) in idx.iter().take(rank).enumerate() {
            let mut u = &q * eig.eigenvectors.column(e);
            // sign convention: largest-magnitude entry positive
            let pivot = (0..s).fold(0, |best, i| if u[i].abs() > u[best].abs() + 1e-12 { i } else { best });
            if u[pivot] < 0.0 {
                u.neg_mut();
            }
            let scale = eig.eigenvalues[e].abs().sqrt();
            for (i, v) in nodes.iter().enumerate() {
                data[v.index() * d_lat + col] = u[i] * scale;
            }
        }
    }
    for row in data.chunks_mut(d_lat) {
        let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            row.iter_mut().for_each(|x| *x /= norm);
        }
    }
    Ok(LatentTable { dim: d_lat, data })
}
