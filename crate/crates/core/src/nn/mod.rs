//! Small dense neural-network kernel: MLPs, a mean-aggregation graph layer
//! with sort pooling, first-order optimizers and a seeded training loop.

mod dense;
mod gnn;
mod gradcheck;
mod matrix;
mod persist;
mod train;

pub use dense::{forward_mlp, Activation, DenseParams, Mlp, MlpTrace};
pub use gnn::{gnn_layer, sort_pool, GnnLayer, GraphInput, SortPoolNet, SortPoolNetConfig};
pub use gradcheck::{check_gradients, GradCheckReport};
pub use matrix::{axpy, dot, Matrix};
pub use persist::{load_model, save_model, ModelFile, MODEL_FORMAT_VERSION};
pub use train::{loss_and_grad, train, OptimizerKind, TrainConfig, TrainOutcome};

use crate::error::Result;

/// Numerically stable softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// `−ln softmax(logits)[class]`, evaluated through log-sum-exp.
pub fn cross_entropy(logits: &[f64], class: usize) -> f64 {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + logits.iter().map(|&z| (z - max).exp()).sum::<f64>().ln();
    lse - logits[class]
}

/// Loss and its gradient with respect to the logits.
pub fn cross_entropy_grad(logits: &[f64], class: usize) -> (f64, Vec<f64>) {
    let mut p = softmax(logits);
    let loss = cross_entropy(logits, class);
    p[class] -= 1.0;
    (loss, p)
}

/// A trainable two-class scorer over inputs of type `Input`.
pub trait Network: Clone {
    type Input;

    fn logits(&self, input: &Self::Input) -> Result<Vec<f64>>;

    /// Adds the gradient of one sample's cross-entropy loss into `grads`
    /// (a network of the same shape) and returns that loss.
    fn accumulate_gradient(&self, input: &Self::Input, class: usize, grads: &mut Self) -> Result<f64>;

    /// Same shape, every parameter zero.
    fn zeros_like(&self) -> Self;

    fn params(&self) -> Vec<&[f64]>;

    fn params_mut(&mut self) -> Vec<&mut [f64]>;

    fn param_count(&self) -> usize {
        self.params().iter().map(|s| s.len()).sum()
    }

    /// Probability of class 1.
    fn positive_probability(&self, input: &Self::Input) -> Result<f64> {
        Ok(softmax(&self.logits(input)?)[1])
    }
}

impl Network for Mlp {
    type Input = Vec<f64>;

    fn logits(&self, input: &Vec<f64>) -> Result<Vec<f64>> {
        self.forward(input)
    }

    fn accumulate_gradient(&self, input: &Vec<f64>, class: usize, grads: &mut Mlp) -> Result<f64> {
        let trace = self.forward_trace(input)?;
        let (loss, d) = cross_entropy_grad(trace.logits(), class);
        self.backward(&trace, &d, grads);
        Ok(loss)
    }

    fn zeros_like(&self) -> Self {
        Mlp::zeros_like(self)
    }

    fn params(&self) -> Vec<&[f64]> {
        self.param_slices()
    }

    fn params_mut(&mut self) -> Vec<&mut [f64]> {
        self.param_slices_mut()
    }
}
