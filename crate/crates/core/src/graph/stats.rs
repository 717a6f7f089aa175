use std::collections::VecDeque;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{connected_components, intersection_size, Graph, NodeId};
use crate::error::Result;
use crate::rng;

/// Components larger than this get sampled path statistics.
const EXACT_PATHS_LIMIT: usize = 5000;
const PATH_SAMPLE_SOURCES: usize = 1000;
const PATH_SAMPLE_SEED: u64 = 0x5eed_0fa9;

/// Topological summary of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub nodes: usize,
    pub links: usize,
    pub avg_degree: f64,
    pub triangles: u64,
    pub avg_clustering: f64,
    /// Average shortest-path length within the largest component.
    pub apl: Option<f64>,
    /// Largest eccentricity observed within the largest component.
    pub diameter: Option<u32>,
}

impl Graph {
    /// Number of triangles through `z`.
    pub fn triangles_through(&self, z: NodeId) -> Result<u64> {
        self.check_node(z)?;
        Ok(self.triangles_at(z))
    }

    pub(crate) fn triangles_at(&self, z: NodeId) -> u64 {
        let nz = self.adj(z);
        let twice: usize = nz.iter().map(|&w| intersection_size(nz, self.adj(w))).sum();
        (twice / 2) as u64
    }

    /// Local clustering coefficient; 0 for nodes of degree below 2.
    pub fn clustering_coefficient(&self, z: NodeId) -> Result<f64> {
        self.check_node(z)?;
        Ok(self.clustering_at(z))
    }

    pub(crate) fn clustering_at(&self, z: NodeId) -> f64 {
        let d = self.degree(z) as f64;
        if d < 2.0 {
            return 0.0;
        }
        2.0 * self.triangles_at(z) as f64 / (d * (d - 1.0))
    }

    pub fn stats(&self, with_paths: bool) -> GraphStats {
        let n = self.node_count();
        let mut triangle_sum = 0u64;
        let mut cc_sum = 0.0;
        for z in self.nodes() {
            let d = self.degree(z) as f64;
            let t = self.triangles_at(z);
            triangle_sum += t;
            if d >= 2.0 {
                cc_sum += 2.0 * t as f64 / (d * (d - 1.0));
            }
        }
        let (apl, diameter) = if with_paths {
            let (apl, diam) = self.path_stats();
            (Some(apl), Some(diam))
        } else {
            (None, None)
        };
        GraphStats {
            nodes: n,
            links: self.edge_count(),
            avg_degree: if n == 0 { 0.0 } else { 2.0 * self.edge_count() as f64 / n as f64 },
            triangles: triangle_sum / 3,
            avg_clustering: if n == 0 { 0.0 } else { cc_sum / n as f64 },
            apl,
            diameter,
        }
    }

    fn path_stats(&self) -> (f64, u32) {
        let comp = connected_components(self);
        let mut sizes = vec![0usize; comp.iter().max().map_or(0, |m| m + 1)];
        for &c in &comp {
            sizes[c] += 1;
        }
        let Some((largest, _)) = sizes.iter().enumerate().max_by_key(|&(i, &s)| (s, std::cmp::Reverse(i))) else {
            return (0.0, 0);
        };
        let mut members: Vec<NodeId> = self
            .nodes()
            .filter(|v| comp[v.index()] == largest)
            .collect();
        if members.len() > EXACT_PATHS_LIMIT {
            members.shuffle(&mut rng::stream(PATH_SAMPLE_SEED, &[]));
            members.truncate(PATH_SAMPLE_SOURCES);
        }
        let mut dist = vec![u32::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        let (mut total, mut pairs, mut diameter) = (0u64, 0u64, 0u32);
        for &s in &members {
            dist.fill(u32::MAX);
            dist[s.index()] = 0;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let dx = dist[x.index()];
                for &y in self.adj(x) {
                    if dist[y.index()] == u32::MAX {
                        dist[y.index()] = dx + 1;
                        total += u64::from(dx + 1);
                        pairs += 1;
                        diameter = diameter.max(dx + 1);
                        queue.push_back(y);
                    }
                }
            }
        }
        let apl = if pairs == 0 { 0.0 } else { total as f64 / pairs as f64 };
        (apl, diameter)
    }
}
