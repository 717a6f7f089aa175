use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::dense::{Activation, DenseParams, Mlp};
use super::matrix::{axpy, Matrix};
use super::{cross_entropy_grad, Network};
use crate::error::{Error, Result};

/// Message-passing layer: `h_i' = relu(W_self·h_i + mean_j W_msg·h_j + b)`
/// over the neighbors `j` of `i`; a node without neighbors aggregates zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnnLayer {
    pub w_self: Matrix,
    pub w_msg: Matrix,
    pub bias: Vec<f64>,
}

impl GnnLayer {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        GnnLayer {
            w_self: Matrix::zeros(outputs, inputs),
            w_msg: Matrix::zeros(outputs, inputs),
            bias: vec![0.0; outputs],
        }
    }

    pub fn init<R: Rng>(inputs: usize, outputs: usize, rng: &mut R) -> Self {
        let a = DenseParams::init(inputs, outputs, rng);
        let b = DenseParams::init(inputs, outputs, rng);
        GnnLayer {
            w_self: a.weights,
            w_msg: b.weights,
            bias: a.bias,
        }
    }

    pub fn inputs(&self) -> usize {
        self.w_self.cols()
    }

    pub fn outputs(&self) -> usize {
        self.w_self.rows()
    }

    fn check(&self, adj: &[Vec<usize>], h: &Matrix) -> Result<()> {
        if h.rows() != adj.len() {
            return Err(Error::Shape(format!(
                "{} feature rows for {} nodes",
                h.rows(),
                adj.len()
            )));
        }
        if h.cols() != self.inputs() {
            return Err(Error::Shape(format!(
                "layer expects {} channels, got {}",
                self.inputs(),
                h.cols()
            )));
        }
        if self.w_msg.rows() != self.outputs()
            || self.w_msg.cols() != self.inputs()
            || self.bias.len() != self.outputs()
        {
            return Err(Error::Shape("inconsistent layer parameters".into()));
        }
        if adj.iter().flatten().any(|&j| j >= adj.len()) {
            return Err(Error::Shape("adjacency refers to a missing node".into()));
        }
        Ok(())
    }

    fn mean_neighbor(adj: &[Vec<usize>], h: &Matrix, i: usize, out: &mut [f64]) {
        out.fill(0.0);
        if adj[i].is_empty() {
            return;
        }
        let w = 1.0 / adj[i].len() as f64;
        for &j in &adj[i] {
            axpy(w, h.row(j), out);
        }
    }

    pub fn forward(&self, adj: &[Vec<usize>], h: &Matrix) -> Result<Matrix> {
        self.check(adj, h)?;
        let mut out = Matrix::zeros(h.rows(), self.outputs());
        let mut mean = vec![0.0; self.inputs()];
        let mut tmp = vec![0.0; self.outputs()];
        for i in 0..h.rows() {
            Self::mean_neighbor(adj, h, i, &mut mean);
            let row = out.row_mut(i);
            self.w_self.mul_vec_into(h.row(i), row);
            self.w_msg.mul_vec_into(&mean, &mut tmp);
            for ((o, t), b) in row.iter_mut().zip(&tmp).zip(&self.bias) {
                *o = (*o + t + b).max(0.0);
            }
        }
        Ok(out)
    }

    /// Accumulates parameter gradients into `grads`; returns `∂L/∂h_in`.
    pub fn backward(&self, adj: &[Vec<usize>], h_in: &Matrix, h_out: &Matrix, d_out: &Matrix, grads: &mut GnnLayer) -> Matrix {
        let n = h_in.rows();
        let mut d_in = Matrix::zeros(n, self.inputs());
        let mut mean = vec![0.0; self.inputs()];
        let mut d_pre = vec![0.0; self.outputs()];
        let mut d_mean = vec![0.0; self.inputs()];
        for i in 0..n {
            let mut any = false;
            for ((d, &g), &y) in d_pre.iter_mut().zip(d_out.row(i)).zip(h_out.row(i)) {
                *d = if y > 0.0 { g } else { 0.0 };
                any |= *d != 0.0;
            }
            if !any {
                continue;
            }
            Self::mean_neighbor(adj, h_in, i, &mut mean);
            grads.w_self.add_outer(&d_pre, h_in.row(i));
            grads.w_msg.add_outer(&d_pre, &mean);
            axpy(1.0, &d_pre, &mut grads.bias);
            self.w_self.add_mul_vec_transposed(&d_pre, d_in.row_mut(i));
            if !adj[i].is_empty() {
                d_mean.fill(0.0);
                self.w_msg.add_mul_vec_transposed(&d_pre, &mut d_mean);
                let w = 1.0 / adj[i].len() as f64;
                for &j in &adj[i] {
                    axpy(w, &d_mean, d_in.row_mut(j));
                }
            }
        }
        d_in
    }
}

/// Applies one [`GnnLayer`].
pub fn gnn_layer(adj: &[Vec<usize>], h: &Matrix, params: &GnnLayer) -> Result<Matrix> {
    params.forward(adj, h)
}

fn sort_order(h: &Matrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.rows()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (h.row(a), h.row(b));
        for c in (0..h.cols()).rev() {
            match rb[c].total_cmp(&ra[c]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.cmp(&b)
    });
    order
}

/// Sorts rows by descending last channel (ties by earlier channels, then row
/// index), keeps the first `k_sp` and zero-pads to `k_sp · cols` values.
/// Also returns the source row behind each kept slot.
pub fn sort_pool(h: &Matrix, k_sp: usize) -> (Vec<f64>, Vec<usize>) {
    let mut order = sort_order(h);
    order.truncate(k_sp);
    let mut out = vec![0.0; k_sp * h.cols()];
    for (slot, &r) in order.iter().enumerate() {
        out[slot * h.cols()..(slot + 1) * h.cols()].copy_from_slice(h.row(r));
    }
    (out, order)
}

/// A subgraph with per-node input features.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphInput {
    pub adjacency: Vec<Vec<usize>>,
    pub features: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SortPoolNetConfig {
    pub layers: usize,
    pub hidden: usize,
    pub k_sp: usize,
    pub head_hidden: Vec<usize>,
}

impl Default for SortPoolNetConfig {
    fn default() -> Self {
        SortPoolNetConfig {
            layers: 3,
            hidden: 32,
            k_sp: 30,
            head_hidden: vec![64],
        }
    }
}

/// Stacked [`GnnLayer`]s, [`sort_pool`] readout and an MLP head emitting
/// two logits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SortPoolNet {
    pub layers: Vec<GnnLayer>,
    pub k_sp: usize,
    pub head: Mlp,
}

struct NetTrace {
    hs: Vec<Matrix>,
    kept: Vec<usize>,
    head: super::dense::MlpTrace,
}

impl SortPoolNet {
    pub fn init<R: Rng>(input_width: usize, cfg: &SortPoolNetConfig, rng: &mut R) -> Result<Self> {
        if cfg.layers == 0 || cfg.hidden == 0 {
            return Err(Error::InvalidArgument("need at least one GNN layer of nonzero width".into()));
        }
        if cfg.k_sp == 0 {
            return Err(Error::InvalidArgument("k_sp must be at least 1".into()));
        }
        if input_width == 0 {
            return Err(Error::InvalidArgument("node features are empty".into()));
        }
        let mut layers = Vec::with_capacity(cfg.layers);
        let mut width = input_width;
        for _ in 0..cfg.layers {
            layers.push(GnnLayer::init(width, cfg.hidden, rng));
            width = cfg.hidden;
        }
        let mut sizes = vec![cfg.k_sp * cfg.hidden];
        sizes.extend(&cfg.head_hidden);
        sizes.push(2);
        let head = Mlp::init(&sizes, Activation::Relu, rng)?;
        Ok(SortPoolNet { layers, k_sp: cfg.k_sp, head })
    }

    pub fn input_width(&self) -> usize {
        self.layers[0].inputs()
    }

    fn trace(&self, input: &GraphInput) -> Result<NetTrace> {
        let mut hs = vec![input.features.clone()];
        for layer in &self.layers {
            let next = layer.forward(&input.adjacency, hs.last().unwrap())?;
            hs.push(next);
        }
        let (pooled, kept) = sort_pool(hs.last().unwrap(), self.k_sp);
        let head = self.head.forward_trace(&pooled)?;
        Ok(NetTrace { hs, kept, head })
    }
}

impl Network for SortPoolNet {
    type Input = GraphInput;

    fn logits(&self, input: &GraphInput) -> Result<Vec<f64>> {
        Ok(self.trace(input)?.head.outputs.pop().unwrap())
    }

    fn accumulate_gradient(&self, input: &GraphInput, class: usize, grads: &mut Self) -> Result<f64> {
        let t = self.trace(input)?;
        let (loss, d_logits) = cross_entropy_grad(t.head.logits(), class);
        let d_pooled = self.head.backward(&t.head, &d_logits, &mut grads.head);
        let last = t.hs.last().unwrap();
        let mut d_h = Matrix::zeros(last.rows(), last.cols());
        for (slot, &r) in t.kept.iter().enumerate() {
            let c = last.cols();
            d_h.row_mut(r).copy_from_slice(&d_pooled[slot * c..(slot + 1) * c]);
        }
        for (l, layer) in self.layers.iter().enumerate().rev() {
            d_h = layer.backward(&input.adjacency, &t.hs[l], &t.hs[l + 1], &d_h, &mut grads.layers[l]);
        }
        Ok(loss)
    }

    fn zeros_like(&self) -> Self {
        SortPoolNet {
            layers: self.layers.iter().map(|l| GnnLayer::zeros(l.inputs(), l.outputs())).collect(),
            k_sp: self.k_sp,
            head: self.head.zeros_like(),
        }
    }

    fn params(&self) -> Vec<&[f64]> {
        let mut out: Vec<&[f64]> = self
            .layers
            .iter()
            .flat_map(|l| [l.w_self.as_slice(), l.w_msg.as_slice(), l.bias.as_slice()])
            .collect();
        out.extend(self.head.param_slices());
        out
    }

    fn params_mut(&mut self) -> Vec<&mut [f64]> {
        let mut out: Vec<&mut [f64]> = self
            .layers
            .iter_mut()
            .flat_map(|l| [l.w_self.as_mut_slice(), l.w_msg.as_mut_slice(), l.bias.as_mut_slice()])
            .collect();
        out.extend(self.head.param_slices_mut());
        out
    }
}
