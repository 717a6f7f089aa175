//! End-to-end neural link predictors built on enclosing subgraphs: WLNM
//! (color-refined adjacency vectors fed to an MLP) and SEAL-lite (DRNL
//! labelled h-hop subgraphs fed to a sort-pooling graph network).
//!
//! Both take the graph used for subgraph extraction as an explicit argument.
//! The target pair is always masked inside its own subgraph, so a positive
//! training link never reveals itself.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Pair};
use crate::nn::{
    self, Activation, GraphInput, Mlp, ModelFile, Network, SortPoolNet, SortPoolNetConfig,
    TrainConfig, MODEL_FORMAT_VERSION,
};
use crate::rng;
use crate::split::{PairSet, SplitBundle};
use crate::subgraph::{
    build_feature_matrix, drnl, extract_h_subgraph, extract_k_subgraph, latent_features, wl_label,
    wlnm_vector_len, FeatureLayout, LatentTable,
};

/// Probability that `(u, v)` is a link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkScore {
    pub u: NodeId,
    pub v: NodeId,
    pub prob: f64,
}

/// Positives as class 1 followed by negatives as class 0, refusing
/// unbalanced sets.
fn labelled_pairs(pos: &PairSet, neg: &PairSet) -> Result<Vec<(Pair, usize)>> {
    if pos.len() != neg.len() {
        return Err(Error::InvalidArgument(format!(
            "training sets must be balanced: {} positives vs {} negatives",
            pos.len(),
            neg.len()
        )));
    }
    if pos.is_empty() {
        return Err(Error::InvalidArgument("no training pairs".into()));
    }
    Ok(pos.iter().map(|p| (p, 1)).chain(neg.iter().map(|p| (p, 0))).collect())
}

fn canonical(g: &Graph, u: NodeId, v: NodeId) -> Result<Pair> {
    g.check_node(u)?;
    g.check_node(v)?;
    Pair::try_new(u, v).ok_or_else(|| Error::InvalidArgument(format!("self-pair ({u}, {u})")))
}

fn save<T: Serialize>(path: &Path, kind: &str, fold_checksum: &str, train: &TrainConfig, model: &T) -> Result<()> {
    nn::save_model(
        path,
        &ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            kind: kind.to_string(),
            fold_checksum: fold_checksum.to_string(),
            train: train.clone(),
            model,
        },
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WlnmConfig {
    /// Subgraph size.
    pub k: usize,
    pub hidden: Vec<usize>,
    pub activation: Activation,
}

impl Default for WlnmConfig {
    fn default() -> Self {
        WlnmConfig {
            k: 10,
            hidden: vec![32, 32, 16],
            activation: Activation::Relu,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WlnmModel {
    pub config: WlnmConfig,
    pub train: TrainConfig,
    mlp: Mlp,
    trained: bool,
    loss_trace: Vec<f64>,
}

impl WlnmModel {
    /// Untrained model with seeded initial weights.
    pub fn new(config: WlnmConfig, train: TrainConfig) -> Result<Self> {
        train.validate()?;
        if config.k < 3 {
            return Err(Error::InvalidArgument(format!(
                "k = {} leaves no adjacency entries to encode; need k >= 3",
                config.k
            )));
        }
        let mut sizes = vec![wlnm_vector_len(config.k)];
        sizes.extend(&config.hidden);
        sizes.push(2);
        let mut init = rng::stream(train.seed, &[rng::tag("wlnm"), rng::tag("init")]);
        let mlp = Mlp::init(&sizes, config.activation, &mut init)?;
        Ok(WlnmModel { config, train, mlp, trained: false, loss_trace: Vec::new() })
    }

    pub fn input_width(&self) -> usize {
        self.mlp.input_width()
    }

    pub fn is_trained(&self) -> bool {
        self.trained
    }

    pub fn mlp(&self) -> &Mlp {
        &self.mlp
    }

    pub fn loss_trace(&self) -> &[f64] {
        &self.loss_trace
    }

    /// Encoding of `(u, v)` in `g` with the pair itself masked.
    pub fn encode(&self, g: &Graph, u: NodeId, v: NodeId) -> Result<Vec<f64>> {
        let p = canonical(g, u, v)?;
        let sg = extract_k_subgraph(g, p.u, p.v, self.config.k)?;
        Ok(wl_label(&sg, self.config.k).vector)
    }

    pub fn fit(&mut self, g: &Graph, pos: &PairSet, neg: &PairSet) -> Result<()> {
        let pairs = labelled_pairs(pos, neg)?;
        let data = pairs
            .par_iter()
            .map(|&(p, y)| Ok((self.encode(g, p.u, p.v)?, y)))
            .collect::<Result<Vec<_>>>()?;
        let out = nn::train(self.mlp.clone(), &data, &self.train)?;
        self.mlp = out.network;
        self.loss_trace = out.loss_trace;
        self.trained = true;
        Ok(())
    }

    pub fn score(&self, g: &Graph, u: NodeId, v: NodeId) -> Result<LinkScore> {
        if !self.trained {
            return Err(Error::Untrained);
        }
        let x = self.encode(g, u, v)?;
        Ok(LinkScore { u, v, prob: self.mlp.positive_probability(&x)? })
    }

    pub fn score_pairs(&self, g: &Graph, pairs: &[Pair]) -> Result<Vec<f64>> {
        pairs.par_iter().map(|p| Ok(self.score(g, p.u, p.v)?.prob)).collect()
    }

    pub fn save(&self, path: &Path, fold_checksum: &str) -> Result<()> {
        save(path, "wlnm", fold_checksum, &self.train, self)
    }

    /// Loads a model and checks it was trained on the fold with `fold_checksum`.
    pub fn load(path: &Path, fold_checksum: &str) -> Result<Self> {
        let file: ModelFile<WlnmModel> = nn::load_model(path, "wlnm")?;
        check_fold(path, &file.fold_checksum, fold_checksum)?;
        Ok(file.model)
    }
}

fn check_fold(path: &Path, found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Corrupt(format!(
            "{} was trained on fold {found}, not {expected}",
            path.display()
        )));
    }
    Ok(())
}

/// Trains WLNM on the fold's balanced training pairs, extracting subgraphs
/// from `graph`.
pub fn wlnm_train(fold: &SplitBundle, graph: &Graph, config: WlnmConfig, train: TrainConfig) -> Result<WlnmModel> {
    let mut m = WlnmModel::new(config, train)?;
    m.fit(graph, &fold.train_pos, &fold.train_neg)?;
    Ok(m)
}

pub fn wlnm_score(m: &WlnmModel, g: &Graph, u: NodeId, v: NodeId) -> Result<LinkScore> {
    m.score(g, u, v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SealConfig {
    /// Hop radius of the enclosing subgraph.
    pub h: u32,
    pub label_cap: u32,
    /// Latent embedding width; 0 disables the block.
    pub d_lat: usize,
    pub latent_iters: usize,
    /// Use categorical node attributes when the graph carries them.
    pub use_attributes: bool,
    pub layers: usize,
    pub hidden: usize,
    pub k_sp: usize,
    pub head_hidden: Vec<usize>,
}

impl Default for SealConfig {
    fn default() -> Self {
        let net = SortPoolNetConfig::default();
        SealConfig {
            h: 1,
            label_cap: 10,
            d_lat: 16,
            latent_iters: 40,
            use_attributes: true,
            layers: net.layers,
            hidden: net.hidden,
            k_sp: net.k_sp,
            head_hidden: net.head_hidden,
        }
    }
}

impl SealConfig {
    pub fn net(&self) -> SortPoolNetConfig {
        SortPoolNetConfig {
            layers: self.layers,
            hidden: self.hidden,
            k_sp: self.k_sp,
            head_hidden: self.head_hidden.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SealModel {
    pub config: SealConfig,
    pub train: TrainConfig,
    layout: FeatureLayout,
    latent: Option<LatentTable>,
    net: SortPoolNet,
    trained: bool,
    loss_trace: Vec<f64>,
}

impl SealModel {
    /// Untrained model for `train_graph`, whose latent embedding is computed
    /// here and which fixes the attribute width.
    pub fn new(train_graph: &Graph, config: SealConfig, train: TrainConfig) -> Result<Self> {
        train.validate()?;
        if config.h == 0 {
            return Err(Error::InvalidArgument("hop radius h must be at least 1".into()));
        }
        let latent = if config.d_lat > 0 {
            let d = config.d_lat.min(train_graph.node_count());
            let seed = rng::derive_seed(train.seed, &[rng::tag("latent")]);
            Some(latent_features(train_graph, d, config.latent_iters, seed)?)
        } else {
            None
        };
        let attr_width = match train_graph.attributes() {
            Some(a) if config.use_attributes => a.category_count(),
            _ => 0,
        };
        let layout = FeatureLayout {
            label_cap: config.label_cap,
            latent_dim: config.d_lat,
            attr_width,
        };
        let mut init = rng::stream(train.seed, &[rng::tag("seal"), rng::tag("init")]);
        let net = SortPoolNet::init(layout.width(), &config.net(), &mut init)?;
        Ok(SealModel { config, train, layout, latent, net, trained: false, loss_trace: Vec::new() })
    }

    pub fn layout(&self) -> FeatureLayout {
        self.layout
    }

    pub fn is_trained(&self) -> bool {
        self.trained
    }

    pub fn network(&self) -> &SortPoolNet {
        &self.net
    }

    pub fn loss_trace(&self) -> &[f64] {
        &self.loss_trace
    }

    /// Labelled, featurized enclosing subgraph of `(u, v)` in `g`.
    pub fn encode(&self, g: &Graph, u: NodeId, v: NodeId) -> Result<GraphInput> {
        let p = canonical(g, u, v)?;
        if let Some(t) = &self.latent {
            if t.node_count() != g.node_count() {
                return Err(Error::Shape(format!(
                    "latent table covers {} nodes but the graph has {}",
                    t.node_count(),
                    g.node_count()
                )));
            }
        }
        let sg = extract_h_subgraph(g, p.u, p.v, self.config.h)?;
        let labeling = drnl(&sg);
        let attrs = if self.layout.attr_width > 0 { g.attributes() } else { None };
        let features = build_feature_matrix(&sg, &labeling, self.latent.as_ref(), attrs, &self.layout);
        let adjacency = (0..sg.len()).map(|i| sg.local_neighbors(i).to_vec()).collect();
        Ok(GraphInput { adjacency, features })
    }

    pub fn fit(&mut self, g: &Graph, pos: &PairSet, neg: &PairSet) -> Result<()> {
        let pairs = labelled_pairs(pos, neg)?;
        let data = pairs
            .par_iter()
            .map(|&(p, y)| Ok((self.encode(g, p.u, p.v)?, y)))
            .collect::<Result<Vec<_>>>()?;
        let out = nn::train(self.net.clone(), &data, &self.train)?;
        self.net = out.network;
        self.loss_trace = out.loss_trace;
        self.trained = true;
        Ok(())
    }

    pub fn score(&self, g: &Graph, u: NodeId, v: NodeId) -> Result<LinkScore> {
        if !self.trained {
            return Err(Error::Untrained);
        }
        let x = self.encode(g, u, v)?;
        Ok(LinkScore { u, v, prob: self.net.positive_probability(&x)? })
    }

    pub fn score_pairs(&self, g: &Graph, pairs: &[Pair]) -> Result<Vec<f64>> {
        pairs.par_iter().map(|p| Ok(self.score(g, p.u, p.v)?.prob)).collect()
    }

    pub fn save(&self, path: &Path, fold_checksum: &str) -> Result<()> {
        save(path, "seal", fold_checksum, &self.train, self)
    }

    pub fn load(path: &Path, fold_checksum: &str) -> Result<Self> {
        let file: ModelFile<SealModel> = nn::load_model(path, "seal")?;
        check_fold(path, &file.fold_checksum, fold_checksum)?;
        Ok(file.model)
    }
}

/// Trains SEAL-lite: latent features come from the fold's training graph,
/// subgraphs are extracted from `graph`.
pub fn seal_train(fold: &SplitBundle, graph: &Graph, config: SealConfig, train: TrainConfig) -> Result<SealModel> {
    let mut m = SealModel::new(&fold.train_graph, config, train)?;
    m.fit(graph, &fold.train_pos, &fold.train_neg)?;
    Ok(m)
}

pub fn seal_score(m: &SealModel, g: &Graph, u: NodeId, v: NodeId) -> Result<LinkScore> {
    m.score(g, u, v)
}
