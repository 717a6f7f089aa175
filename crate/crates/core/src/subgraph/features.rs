use serde::{Deserialize, Serialize};

use super::{DrnlLabeling, EnclosingSubgraph, LatentTable};
use crate::graph::NodeAttributes;
use crate::nn::Matrix;

/// Column layout of per-node feature rows:
/// `[one-hot label (label_cap + 1) | latent (latent_dim) | one-hot attribute (attr_width)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureLayout {
    pub label_cap: u32,
    pub latent_dim: usize,
    pub attr_width: usize,
}

impl FeatureLayout {
    pub fn width(&self) -> usize {
        self.label_cap as usize + 1 + self.latent_dim + self.attr_width
    }
}

/// One feature row per subgraph node. Absent latent or attribute sources
/// leave their blocks zero, so the width is fixed by `layout` alone.
pub fn build_feature_matrix(
    sg: &EnclosingSubgraph,
    labeling: &DrnlLabeling,
    latent: Option<&LatentTable>,
    attributes: Option<&NodeAttributes>,
    layout: &FeatureLayout,
) -> Matrix {
    let mut m = Matrix::zeros(sg.len(), layout.width());
    let latent_at = layout.label_cap as usize + 1;
    let attr_at = latent_at + layout.latent_dim;
    for (i, &node) in sg.nodes().iter().enumerate() {
        let row = m.row_mut(i);
        row[labeling.labels[i].min(layout.label_cap) as usize] = 1.0;
        if let Some(t) = latent {
            let src = t.row(node);
            let n = src.len().min(layout.latent_dim);
            row[latent_at..latent_at + n].copy_from_slice(&src[..n]);
        }
        if let Some(value) = attributes.and_then(|a| a.value(node)) {
            if (value as usize) < layout.attr_width {
                row[attr_at + value as usize] = 1.0;
            }
        }
    }
    m
}
