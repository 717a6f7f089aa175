//! Enclosing subgraphs around candidate links and the node orderings,
//! labels and features derived from them.

mod drnl;
mod features;
mod latent;
mod wl;

use std::collections::{HashMap, VecDeque};
use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub use drnl::{drnl, drnl_label, DrnlLabeling};
pub use features::{build_feature_matrix, FeatureLayout};
pub use latent::{latent_features, LatentTable};
pub use wl::{wl_label, wlnm_vector_len, WlnmEncoding};

/// Induced subgraph around a target pair. Local indices 0 and 1 are the
/// target endpoints, and the edge between them (if any) is never present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnclosingSubgraph {
    nodes: Vec<NodeId>,
    adjacency: Vec<Vec<usize>>,
    hop_of: Vec<u32>,
    slots: usize,
}

impl EnclosingSubgraph {
    fn induced(g: &Graph, nodes: Vec<NodeId>, hop_of: Vec<u32>, slots: usize) -> Self {
        let local: HashMap<NodeId, usize> =
            nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let adjacency = nodes
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let mut out: Vec<usize> = g
                    .adj(n)
                    .iter()
                    .filter_map(|w| local.get(w).copied())
                    .filter(|&j| !matches!((i, j), (0, 1) | (1, 0)))
                    .collect();
                out.sort_unstable();
                out
            })
            .collect();
        EnclosingSubgraph {
            nodes,
            adjacency,
            hop_of,
            slots,
        }
    }

    /// Original node ids, target endpoints first.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nominal size: `k` for k-node subgraphs (which may hold fewer real
    /// nodes), the node count otherwise.
    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn target(&self) -> (usize, usize) {
        (0, 1)
    }

    /// Hop number of each node from the target pair.
    pub fn hop_of(&self) -> &[u32] {
        &self.hop_of
    }

    pub fn local_neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Hop distances from local node `src` within the subgraph.
    pub fn distances_from(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap() + 1;
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

fn check_pair(g: &Graph, u: NodeId, v: NodeId) -> Result<()> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(Error::InvalidArgument(format!("self-pair ({u}, {u})")));
    }
    Ok(())
}

/// WLNM-style extraction: grows rings around `{u, v}` until at least `k`
/// nodes are collected, then trims the outermost ring back to `k`.
pub fn extract_k_subgraph(g: &Graph, u: NodeId, v: NodeId, k: usize) -> Result<EnclosingSubgraph> {
    check_pair(g, u, v)?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!("subgraph size k must be >= 2, got {k}")));
    }
    let mut hop: HashMap<NodeId, u32> = HashMap::from([(u, 0), (v, 0)]);
    let mut nodes = vec![u, v];
    let mut hops = vec![0, 0];
    let mut frontier = vec![u, v];
    let mut ring = 0;
    while nodes.len() < k && !frontier.is_empty() {
        ring += 1;
        let mut next: Vec<NodeId> = Vec::new();
        for &x in &frontier {
            for &y in g.adj(x) {
                if let std::collections::hash_map::Entry::Vacant(e) = hop.entry(y) {
                    e.insert(ring);
                    next.push(y);
                }
            }
        }
        next.sort_unstable();
        let need = k - nodes.len();
        if next.len() > need {
            // rank the outer ring by distance sum to the endpoints, then id
            let mut tentative = nodes.clone();
            tentative.extend_from_slice(&next);
            let probe = EnclosingSubgraph::induced(g, tentative, vec![0; 0], 0);
            let (du, dv) = (probe.distances_from(0), probe.distances_from(1));
            let base = nodes.len();
            let mut ranked: Vec<(u64, NodeId)> = next
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    let d = |x: Option<u32>| x.map_or(u64::from(u32::MAX), u64::from);
                    (d(du[base + i]) + d(dv[base + i]), n)
                })
                .collect();
            ranked.sort_unstable();
            let mut keep: Vec<NodeId> = ranked[..need].iter().map(|&(_, n)| n).collect();
            keep.sort_unstable();
            next = keep;
        }
        hops.extend(std::iter::repeat_n(ring, next.len()));
        nodes.extend_from_slice(&next);
        frontier = next;
    }
    Ok(EnclosingSubgraph::induced(g, nodes, hops, k))
}

/// SEAL-style extraction: union of the `h`-hop balls around `u` and `v`,
/// computed with the target link removed.
pub fn extract_h_subgraph(g: &Graph, u: NodeId, v: NodeId, h: u32) -> Result<EnclosingSubgraph> {
    check_pair(g, u, v)?;
    if h < 1 {
        return Err(Error::InvalidArgument("hop count h must be >= 1".into()));
    }
    let ball = |src: NodeId, other: NodeId| -> HashMap<NodeId, u32> {
        let mut dist = HashMap::from([(src, 0u32)]);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if d == h {
                continue;
            }
            for &y in g.adj(x) {
                if (x == src && y == other) || (x == other && y == src) {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    };
    let (bu, bv) = (ball(u, v), ball(v, u));
    let mut rest: Vec<(u32, NodeId)> = bu
        .keys()
        .chain(bv.keys())
        .filter(|&&n| n != u && n != v)
        .map(|&n| {
            let d = bu.get(&n).copied().unwrap_or(u32::MAX).min(bv.get(&n).copied().unwrap_or(u32::MAX));
            (d, n)
        })
        .collect();
    rest.sort_unstable();
    rest.dedup();
    let mut nodes = vec![u, v];
    let mut hops = vec![0, 0];
    for (d, n) in rest {
        nodes.push(n);
        hops.push(d);
    }
    let slots = nodes.len();
    Ok(EnclosingSubgraph::induced(g, nodes, hops, slots))
}

/// Text dump: one `node localIdx origId hopU hopV label` line per node,
/// then one `edge i j` line per local edge.
pub fn write_debug_dump<W: Write>(
    g: &Graph,
    sg: &EnclosingSubgraph,
    labeling: &DrnlLabeling,
    mut out: W,
) -> std::io::Result<()> {
    let fmt = |d: Option<u32>| d.map_or_else(|| "inf".to_owned(), |d| d.to_string());
    for (i, &n) in sg.nodes().iter().enumerate() {
        writeln!(
            out,
            "node {i} {} {} {} {}",
            g.label(n),
            fmt(labeling.dist_u[i]),
            fmt(labeling.dist_v[i]),
            labeling.labels[i]
        )?;
    }
    for i in 0..sg.len() {
        for &j in sg.local_neighbors(i) {
            if i < j {
                writeln!(out, "edge {i} {j}")?;
            }
        }
    }
    out.flush()
}
