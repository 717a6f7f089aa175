//! Immutable undirected simple graphs with interned node labels.

mod components;
mod io;
mod stats;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use components::{component_count, connected_components, UnionFind};
pub use io::{
    load_attributes, load_edge_list, load_edge_list_with_report, read_edge_list, write_edge_list,
    write_pairs, EdgeListFormat, LoadReport,
};
pub use stats::GraphStats;

/// Dense node index assigned at load time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(u32::try_from(i).expect("node index exceeds u32"))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered node pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub u: NodeId,
    pub v: NodeId,
}

impl Pair {
    /// Panics if `a == b`; self-pairs are never valid candidates.
    pub fn new(a: NodeId, b: NodeId) -> Self {
        assert_ne!(a, b, "self-pair {a}");
        if a < b {
            Pair { u: a, v: b }
        } else {
            Pair { u: b, v: a }
        }
    }

    pub fn try_new(a: NodeId, b: NodeId) -> Option<Self> {
        (a != b).then(|| Pair::new(a, b))
    }

    pub fn contains(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }
}

/// Bijective map between original string labels and dense indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeLabels {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NodeLabels {
    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = NodeId::from(self.labels.len());
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn get(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Categorical per-node attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeAttributes {
    values: Vec<Option<u32>>,
    categories: Vec<String>,
}

impl NodeAttributes {
    pub fn new(values: Vec<Option<u32>>, categories: Vec<String>) -> Self {
        debug_assert!(values
            .iter()
            .flatten()
            .all(|&c| (c as usize) < categories.len()));
        NodeAttributes { values, categories }
    }

    pub fn value(&self, v: NodeId) -> Option<u32> {
        self.values.get(v.index()).copied().flatten()
    }

    pub fn category_count(&self) -> usize {
        self.categories.len()
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }
}

/// Undirected simple graph. Adjacency lists are sorted and duplicate-free.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Arc<NodeLabels>,
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    attributes: Option<Arc<NodeAttributes>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency && self.labels == other.labels
    }
}

impl Graph {
    /// Builds a graph on nodes `0..node_count` labelled by their index.
    /// Self-loops and duplicates are dropped.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut builder = GraphBuilder::default();
        for i in 0..node_count {
            builder.add_node(&i.to_string());
        }
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= node_count {
                    return Err(Error::NodeOutOfRange { node: x, node_count });
                }
            }
            builder.add_edge(NodeId::from(a), NodeId::from(b));
        }
        Ok(builder.finish().0)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::from)
    }

    pub fn labels(&self) -> &NodeLabels {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> &str {
        self.labels.label(v)
    }

    pub fn node_by_label(&self, label: &str) -> Result<NodeId> {
        self.labels
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn attributes(&self) -> Option<&NodeAttributes> {
        self.attributes.as_deref()
    }

    /// Returns a copy of this graph carrying `attributes`.
    pub fn with_attributes(mut self, attributes: NodeAttributes) -> Self {
        self.attributes = Some(Arc::new(attributes));
        self
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v.index() < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v.index(),
                node_count: self.node_count(),
            })
        }
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check_node(v)?;
        Ok(&self.adjacency[v.index()])
    }

    /// Unchecked variant of [`Graph::neighbors`]; panics when out of range.
    #[inline]
    pub fn adj(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.index()]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        let (small, other) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.adj(small).binary_search(&other).is_ok()
    }

    /// All edges as pairs, in increasing `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = NodeId::from(u);
            list.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Pair { u, v })
        })
    }

    /// Same node set and labels, with `removed` edges deleted.
    pub fn without_edges(&self, removed: &[Pair]) -> Graph {
        let mut adjacency = self.adjacency.clone();
        let mut dropped = 0;
        for p in removed {
            let list = &mut adjacency[p.u.index()];
            if let Ok(pos) = list.binary_search(&p.v) {
                list.remove(pos);
                let other = &mut adjacency[p.v.index()];
                let pos = other.binary_search(&p.u).expect("asymmetric adjacency");
                other.remove(pos);
                dropped += 1;
            }
        }
        Graph {
            labels: Arc::clone(&self.labels),
            adjacency,
            edge_count: self.edge_count - dropped,
            attributes: self.attributes.clone(),
        }
    }

    /// Same node set and labels with exactly `edges`.
    pub fn with_edge_set(&self, edges: &[Pair]) -> Graph {
        let mut adjacency = vec![Vec::new(); self.node_count()];
        for p in edges {
            adjacency[p.u.index()].push(p.v);
            adjacency[p.v.index()].push(p.u);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Graph {
            labels: Arc::clone(&self.labels),
            adjacency,
            edge_count: edge_count / 2,
            attributes: self.attributes.clone(),
        }
    }

    /// Number of shared neighbors of `a` and `b`.
    pub fn common_neighbor_count(&self, a: NodeId, b: NodeId) -> usize {
        intersection_size(self.adj(a), self.adj(b))
    }

    /// SHA-256 over the label table and edge list, hex encoded.
    pub fn checksum(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.node_count() as u64).to_le_bytes());
        for v in self.nodes() {
            hasher.update(self.label(v).as_bytes());
            hasher.update([0u8]);
        }
        for p in self.edges() {
            hasher.update(p.u.0.to_le_bytes());
            hasher.update(p.v.0.to_le_bytes());
        }
        hex::encode(hasher.finalize())
    }
}

/// Merge-intersection of two sorted slices.
pub fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Merge-intersection of two sorted slices into `out` (cleared first).
pub fn intersect_into(a: &[NodeId], b: &[NodeId], out: &mut Vec<NodeId>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Incremental graph construction. Drops self-loops and duplicate edges,
/// counting both.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: NodeLabels,
    adjacency: Vec<Vec<NodeId>>,
    self_loops: usize,
}

impl GraphBuilder {
    pub fn add_node(&mut self, label: &str) -> NodeId {
        let id = self.labels.intern(label);
        if id.index() == self.adjacency.len() {
            self.adjacency.push(Vec::new());
        }
        id
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        if a == b {
            self.self_loops += 1;
            return;
        }
        self.adjacency[a.index()].push(b);
        self.adjacency[b.index()].push(a);
    }

    pub fn add_labelled_edge(&mut self, a: &str, b: &str) {
        let a = self.add_node(a);
        let b = self.add_node(b);
        self.add_edge(a, b);
    }

    pub fn finish(mut self) -> (Graph, LoadReport) {
        let mut half_edges = 0;
        let mut raw = 0;
        for list in &mut self.adjacency {
            raw += list.len();
            list.sort_unstable();
            list.dedup();
            half_edges += list.len();
        }
        let report = LoadReport {
            self_loops: self.self_loops,
            duplicate_edges: (raw - half_edges) / 2,
        };
        let graph = Graph {
            labels: Arc::new(self.labels),
            adjacency: self.adjacency,
            edge_count: half_edges / 2,
            attributes: None,
        };
        (graph, report)
    }
}
