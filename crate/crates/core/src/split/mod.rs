//! Train/test fold construction with connectivity-preserving positives and
//! uniformly sampled negatives.

mod persist;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Pair, UnionFind};
use crate::rng;

pub use persist::{load_fold, load_folds, save_fold, save_folds, FoldManifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn is_positive(self) -> bool {
        self == Polarity::Positive
    }
}

/// Duplicate-free list of candidate pairs with a known label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    pub pairs: Vec<Pair>,
    pub polarity: Polarity,
}

impl PairSet {
    pub fn new(mut pairs: Vec<Pair>, polarity: Polarity) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        PairSet { pairs, polarity }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }
}

/// One fold: the training graph plus four labelled pair sets.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitBundle {
    pub fold_index: usize,
    pub seed: u64,
    pub test_fraction: f64,
    pub train_graph: Graph,
    pub train_pos: PairSet,
    pub train_neg: PairSet,
    pub test_pos: PairSet,
    pub test_neg: PairSet,
}

impl SplitBundle {
    /// SHA-256 over the fold's pair sets and generating parameters.
    pub fn checksum(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.seed.to_le_bytes());
        hasher.update((self.fold_index as u64).to_le_bytes());
        for set in [&self.train_pos, &self.train_neg, &self.test_pos, &self.test_neg] {
            hasher.update((set.len() as u64).to_le_bytes());
            for p in set.iter() {
                hasher.update(p.u.0.to_le_bytes());
                hasher.update(p.v.0.to_le_bytes());
            }
        }
        hex::encode(hasher.finalize())
    }
}

/// Number of test positives drawn from a graph with `edges` links.
pub fn test_quota(edges: usize, test_fraction: f64) -> usize {
    (test_fraction * edges as f64).round() as usize
}

fn check_fraction(test_fraction: f64) -> Result<()> {
    if test_fraction > 0.0 && test_fraction < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "test fraction must lie in (0, 1), got {test_fraction}"
        )))
    }
}

/// Splits the edges of `g` into (train, test) positives. Test edges are drawn
/// from the complement of a randomly seeded spanning forest, so the training
/// graph keeps the component structure of `g`.
pub fn split_positives(
    g: &Graph,
    test_fraction: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Pair>, Vec<Pair>)> {
    check_fraction(test_fraction)?;
    let mut edges: Vec<Pair> = g.edges().collect();
    let quota = test_quota(edges.len(), test_fraction);
    edges.shuffle(rng);
    let mut forest = UnionFind::new(g.node_count());
    let mut tree = Vec::with_capacity(g.node_count());
    let mut cotree = Vec::new();
    for p in edges {
        if forest.union(p.u.index(), p.v.index()) {
            tree.push(p);
        } else {
            cotree.push(p);
        }
    }
    if cotree.len() < quota || quota == 0 {
        return Err(Error::InsufficientRemovableEdges {
            requested: quota.max(1),
            available: cotree.len(),
        });
    }
    // cotree is already in random order
    let mut train = tree;
    train.extend_from_slice(&cotree[quota..]);
    cotree.truncate(quota);
    train.sort_unstable();
    cotree.sort_unstable();
    Ok((train, cotree))
}

/// Builds `folds` independent random sub-sampling folds.
pub fn make_splits(
    g: &Graph,
    folds: usize,
    test_fraction: f64,
    seed: u64,
) -> Result<Vec<SplitBundle>> {
    (0..folds)
        .map(|fold| make_fold(g, fold, test_fraction, seed))
        .collect()
}

pub fn make_fold(g: &Graph, fold: usize, test_fraction: f64, seed: u64) -> Result<SplitBundle> {
    let mut rng = rng::stream(seed, &[rng::tag("split"), fold as u64]);
    let (train, test) = split_positives(g, test_fraction, &mut rng)?;
    let test_neg = sample_negatives_with(g, test.len(), &[], &mut rng)?;
    let train_neg = sample_negatives_with(g, train.len(), &[&test_neg], &mut rng)?;
    let train_graph = g.with_edge_set(&train);
    Ok(SplitBundle {
        fold_index: fold,
        seed,
        test_fraction,
        train_graph,
        train_pos: PairSet::new(train, Polarity::Positive),
        train_neg,
        test_pos: PairSet::new(test, Polarity::Positive),
        test_neg,
    })
}

/// Draws `n` distinct non-edges of `g` avoiding every pair in `exclude`.
pub fn sample_negatives(g: &Graph, n: usize, exclude: &[&PairSet], seed: u64) -> Result<PairSet> {
    let mut rng = rng::stream(seed, &[rng::tag("negatives")]);
    sample_negatives_with(g, n, exclude, &mut rng)
}

fn sample_negatives_with(
    g: &Graph,
    n: usize,
    exclude: &[&PairSet],
    rng: &mut ChaCha8Rng,
) -> Result<PairSet> {
    let nodes = g.node_count() as u64;
    let all_pairs = nodes * nodes.saturating_sub(1) / 2;
    let mut taken: HashSet<Pair> = exclude
        .iter()
        .flat_map(|s| s.iter())
        .filter(|p| !g.has_edge(p.u, p.v))
        .collect();
    let available = all_pairs - g.edge_count() as u64 - taken.len() as u64;
    if n as u64 > available {
        return Err(Error::InsufficientNonEdges {
            requested: n,
            available: available as usize,
        });
    }
    let mut out = Vec::with_capacity(n);
    if (n as u64) * 2 > available {
        // dense regime: enumerate candidates instead of rejecting
        let mut candidates = Vec::with_capacity(available as usize);
        for a in g.nodes() {
            for b in (a.index() + 1..g.node_count()).map(NodeId::from) {
                let p = Pair { u: a, v: b };
                if !g.has_edge(a, b) && !taken.contains(&p) {
                    candidates.push(p);
                }
            }
        }
        let (chosen, _) = candidates.partial_shuffle(rng, n);
        out.extend_from_slice(chosen);
    } else {
        while out.len() < n {
            let a = NodeId(rng.random_range(0..nodes) as u32);
            let b = NodeId(rng.random_range(0..nodes) as u32);
            let Some(p) = Pair::try_new(a, b) else { continue };
            if g.has_edge(a, b) || !taken.insert(p) {
                continue;
            }
            out.push(p);
        }
    }
    Ok(PairSet::new(out, Polarity::Negative))
}
