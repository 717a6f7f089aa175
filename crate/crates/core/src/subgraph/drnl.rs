use super::EnclosingSubgraph;

/// Double-radius node labels plus the distances they were derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrnlLabeling {
    pub labels: Vec<u32>,
    pub dist_u: Vec<Option<u32>>,
    pub dist_v: Vec<Option<u32>>,
}

/// Label for a non-endpoint node at distances `(du, dv)` from the two
/// endpoints. Symmetric in its arguments and injective on unordered pairs.
pub fn drnl_label(du: u32, dv: u32) -> u32 {
    let d = du + dv;
    let half = d / 2;
    1 + du.min(dv) + half * (half + d % 2 - 1)
}

/// Labels every node of `sg`: endpoints get 1, nodes cut off from either
/// endpoint get 0.
pub fn drnl(sg: &EnclosingSubgraph) -> DrnlLabeling {
    let dist_u = sg.distances_from(0);
    let dist_v = sg.distances_from(1);
    let labels = (0..sg.len())
        .map(|i| match (i, dist_u[i], dist_v[i]) {
            (0 | 1, _, _) => 1,
            (_, Some(a), Some(b)) => drnl_label(a, b),
            _ => 0,
        })
        .collect();
    DrnlLabeling {
        labels,
        dist_u,
        dist_v,
    }
}
