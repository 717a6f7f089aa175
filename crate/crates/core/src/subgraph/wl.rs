use super::EnclosingSubgraph;

/// Length of the WLNM input vector for subgraph size `k`: the strict upper
/// triangle of a `k × k` adjacency matrix minus the target entry.
pub fn wlnm_vector_len(k: usize) -> usize {
    (k * (k - 1) / 2).saturating_sub(1)
}

/// Node ordering from color refinement and the resulting adjacency encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct WlnmEncoding {
    /// Position (1-based) of each local node in the final order.
    pub labels: Vec<u32>,
    /// Local node indices sorted by final order.
    pub order: Vec<usize>,
    /// Upper-triangular adjacency in final order, target entry removed,
    /// zero-padded to the subgraph's slot count.
    pub vector: Vec<f64>,
    /// Refinement rounds performed before the partition stabilized.
    pub iterations: usize,
    /// Final color class of each local node (1-based, dense).
    pub colors: Vec<u32>,
}

/// Dense ranks (1-based) of `keys` in sorted order.
fn rank<K: Ord + Clone>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    let ranks = keys
        .iter()
        .map(|k| distinct.binary_search(k).unwrap() as u32 + 1)
        .collect();
    (ranks, distinct.len())
}

/// Color refinement seeded by `(min, max)` distance to the target endpoints.
/// Each round a node's new color is the rank of (own color, sorted neighbor
/// colors); ranking sorts on the old color first, so the order induced by
/// earlier rounds is preserved and the partition only ever splits.
pub fn wl_label(sg: &EnclosingSubgraph, max_iters: usize) -> WlnmEncoding {
    let n = sg.len();
    let (du, dv) = (sg.distances_from(0), sg.distances_from(1));
    let inf = |d: Option<u32>| d.unwrap_or(u32::MAX);
    let initial_keys: Vec<(u32, u32)> = (0..n)
        .map(|i| {
            let (a, b) = (inf(du[i]), inf(dv[i]));
            (a.min(b), a.max(b))
        })
        .collect();
    let (initial, mut classes) = rank(&initial_keys);
    let mut colors = initial.clone();
    let mut iterations = 0;
    while iterations < max_iters && classes < n {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|i| {
                let mut nb: Vec<u32> = sg.local_neighbors(i).iter().map(|&j| colors[j]).collect();
                nb.sort_unstable();
                (colors[i], nb)
            })
            .collect();
        let (next, next_classes) = rank(&signatures);
        iterations += 1;
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (colors[i], initial[i], sg.nodes()[i]));
    let mut labels = vec![0u32; n];
    for (pos, &i) in order.iter().enumerate() {
        labels[i] = pos as u32 + 1;
    }
    let k = sg.slots().max(n);
    let mut vector = Vec::with_capacity(wlnm_vector_len(k));
    for a in 0..k {
        for b in a + 1..k {
            if (a, b) == (0, 1) {
                continue;
            }
            let bit = a < n && b < n && sg.has_edge(order[a], order[b]);
            vector.push(if bit { 1.0 } else { 0.0 });
        }
    }
    WlnmEncoding {
        labels,
        order,
        vector,
        iterations,
        colors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, NodeId};
    use crate::subgraph::{extract_h_subgraph, extract_k_subgraph};

    #[test]
    fn vector_length() {
        assert_eq!(wlnm_vector_len(2), 0);
        assert_eq!(wlnm_vector_len(10), 44);
    }

    #[test]
    fn single_link_has_empty_vector() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let sg = extract_k_subgraph(&g, NodeId(0), NodeId(1), 2).unwrap();
        let enc = wl_label(&sg, 10);
        assert!(enc.vector.is_empty());
        assert_eq!(enc.labels, vec![1, 2]);
    }

    #[test]
    fn symmetric_cycle_ties_broken_by_id() {
        // C4 0-1-2-3-0, target opposite corners (0, 2)
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let sg = extract_k_subgraph(&g, NodeId(0), NodeId(2), 4).unwrap();
        let enc = wl_label(&sg, 10);
        assert_eq!(enc.colors[0], enc.colors[1]);
        assert_eq!(enc.colors[2], enc.colors[3]);
        let ids: Vec<NodeId> = enc.order.iter().map(|&i| sg.nodes()[i]).collect();
        assert_eq!(ids, vec![NodeId(0), NodeId(2), NodeId(1), NodeId(3)]);
        // entries (0,2) (0,3) (1,2) (1,3) (2,3)
        assert_eq!(enc.vector, vec![1.0, 1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn endpoints_come_first() {
        let g = Graph::from_edges(7, &[(0, 2), (1, 3), (2, 3), (2, 4), (4, 5), (5, 6), (0, 6)]).unwrap();
        let sg = extract_k_subgraph(&g, NodeId(0), NodeId(1), 6).unwrap();
        let enc = wl_label(&sg, 10);
        let mut first_two = [enc.order[0], enc.order[1]];
        first_two.sort_unstable();
        assert_eq!(first_two, [0, 1]);
        let mut labels = enc.labels.clone();
        labels.sort_unstable();
        assert_eq!(labels, (1..=sg.len() as u32).collect::<Vec<_>>());
        assert!(enc.vector.iter().all(|&x| x == 0.0 || x == 1.0));
    }

    #[test]
    fn non_isomorphic_neighborhoods_split_after_one_round() {
        // nodes 2 and 3 share the initial color (1, 2) but 2 has a pendant 4
        // and 3 does not
        let g = Graph::from_edges(5, &[(0, 2), (1, 2), (0, 3), (1, 3), (2, 4)]).unwrap();
        let sg = extract_h_subgraph(&g, NodeId(0), NodeId(1), 2).unwrap();
        let local = |n: u32| sg.nodes().iter().position(|&x| x == NodeId(n)).unwrap();
        let zero = wl_label(&sg, 0);
        assert_eq!(zero.colors[local(2)], zero.colors[local(3)]);
        let one = wl_label(&sg, 1);
        assert_ne!(one.colors[local(2)], one.colors[local(3)]);
    }

    #[test]
    fn padding_when_component_is_small() {
        let g = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        let sg = extract_k_subgraph(&g, NodeId(0), NodeId(1), 5).unwrap();
        let enc = wl_label(&sg, 5);
        assert_eq!(enc.vector.len(), wlnm_vector_len(5));
        assert_eq!(enc.vector.iter().sum::<f64>(), 2.0);
    }
}
