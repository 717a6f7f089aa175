use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Sigmoid,
    Tanh,
}

impl Activation {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Tanh => x.tanh(),
        }
    }

    /// Derivative expressed through the activation's output `y`.
    #[inline]
    pub fn derivative_from_output(self, y: f64) -> f64 {
        match self {
            Activation::Relu => {
                if y > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Sigmoid => y * (1.0 - y),
            Activation::Tanh => 1.0 - y * y,
        }
    }
}

/// Weights (`out × in`) and bias of one fully connected layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseParams {
    pub weights: Matrix,
    pub bias: Vec<f64>,
}

impl DenseParams {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        DenseParams {
            weights: Matrix::zeros(outputs, inputs),
            bias: vec![0.0; outputs],
        }
    }

    /// Uniform in `±1/√inputs`.
    pub fn init<R: Rng>(inputs: usize, outputs: usize, rng: &mut R) -> Self {
        let bound = 1.0 / (inputs.max(1) as f64).sqrt();
        let mut p = DenseParams::zeros(inputs, outputs);
        for w in p.weights.as_mut_slice() {
            *w = rng.random_range(-bound..=bound);
        }
        for b in &mut p.bias {
            *b = rng.random_range(-bound..=bound);
        }
        p
    }

    pub fn inputs(&self) -> usize {
        self.weights.cols()
    }

    pub fn outputs(&self) -> usize {
        self.weights.rows()
    }

    /// `out = W·x + b`
    pub fn affine_into(&self, x: &[f64], out: &mut [f64]) {
        self.weights.mul_vec_into(x, out);
        for (o, b) in out.iter_mut().zip(&self.bias) {
            *o += b;
        }
    }
}

/// Fully connected network: hidden layers use `activation`, the final layer
/// is linear and yields class logits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    layers: Vec<DenseParams>,
    activation: Activation,
}

/// Layer outputs recorded by [`Mlp::forward_trace`]; entry 0 is the input.
#[derive(Debug, Clone)]
pub struct MlpTrace {
    pub outputs: Vec<Vec<f64>>,
}

impl MlpTrace {
    pub fn logits(&self) -> &[f64] {
        self.outputs.last().expect("trace has the input at least")
    }
}

impl Mlp {
    pub fn new(layers: Vec<DenseParams>, activation: Activation) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Shape("an MLP needs at least one layer".into()));
        }
        for (i, pair) in layers.windows(2).enumerate() {
            if pair[0].outputs() != pair[1].inputs() {
                return Err(Error::Shape(format!(
                    "layer {i} emits {} values but layer {} expects {}",
                    pair[0].outputs(),
                    i + 1,
                    pair[1].inputs()
                )));
            }
        }
        for (i, l) in layers.iter().enumerate() {
            if l.bias.len() != l.outputs() {
                return Err(Error::Shape(format!("layer {i} bias length mismatch")));
            }
        }
        Ok(Mlp { layers, activation })
    }

    /// Seeded network with layer widths `sizes` (input first, logits last).
    pub fn init<R: Rng>(sizes: &[usize], activation: Activation, rng: &mut R) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::Shape("need input and output sizes".into()));
        }
        let layers = sizes
            .windows(2)
            .map(|w| DenseParams::init(w[0], w[1], rng))
            .collect();
        Mlp::new(layers, activation)
    }

    pub fn layers(&self) -> &[DenseParams] {
        &self.layers
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn input_width(&self) -> usize {
        self.layers[0].inputs()
    }

    pub fn output_width(&self) -> usize {
        self.layers.last().unwrap().outputs()
    }

    pub fn forward_trace(&self, input: &[f64]) -> Result<MlpTrace> {
        if input.len() != self.input_width() {
            return Err(Error::Shape(format!(
                "MLP expects {} inputs, got {}",
                self.input_width(),
                input.len()
            )));
        }
        let mut outputs = Vec::with_capacity(self.layers.len() + 1);
        outputs.push(input.to_vec());
        let last = self.layers.len() - 1;
        for (i, layer) in self.layers.iter().enumerate() {
            let mut out = vec![0.0; layer.outputs()];
            layer.affine_into(outputs.last().unwrap(), &mut out);
            if i != last {
                out.iter_mut().for_each(|x| *x = self.activation.apply(*x));
            }
            outputs.push(out);
        }
        Ok(MlpTrace { outputs })
    }

    pub fn forward(&self, input: &[f64]) -> Result<Vec<f64>> {
        Ok(self.forward_trace(input)?.outputs.pop().unwrap())
    }

    /// Back-propagates `d_logits` through a recorded pass, accumulating
    /// parameter gradients into `grads` and returning the input gradient.
    pub fn backward(&self, trace: &MlpTrace, d_logits: &[f64], grads: &mut Mlp) -> Vec<f64> {
        let mut delta = d_logits.to_vec();
        for i in (0..self.layers.len()).rev() {
            let input = &trace.outputs[i];
            let g = &mut grads.layers[i];
            g.weights.add_outer(&delta, input);
            for (b, d) in g.bias.iter_mut().zip(&delta) {
                *b += d;
            }
            let mut d_in = vec![0.0; input.len()];
            self.layers[i].weights.add_mul_vec_transposed(&delta, &mut d_in);
            if i > 0 {
                for (d, &y) in d_in.iter_mut().zip(input) {
                    *d *= self.activation.derivative_from_output(y);
                }
            }
            delta = d_in;
        }
        delta
    }

    pub(crate) fn param_slices(&self) -> Vec<&[f64]> {
        self.layers
            .iter()
            .flat_map(|l| [l.weights.as_slice(), l.bias.as_slice()])
            .collect()
    }

    pub(crate) fn param_slices_mut(&mut self) -> Vec<&mut [f64]> {
        self.layers
            .iter_mut()
            .flat_map(|l| [l.weights.as_mut_slice(), l.bias.as_mut_slice()])
            .collect()
    }

    pub(crate) fn zeros_like(&self) -> Mlp {
        Mlp {
            layers: self
                .layers
                .iter()
                .map(|l| DenseParams::zeros(l.inputs(), l.outputs()))
                .collect(),
            activation: self.activation,
        }
    }
}

/// Forward pass through an explicit layer list; see [`Mlp`].
pub fn forward_mlp(params: &[DenseParams], input: &[f64], activation: Activation) -> Result<Vec<f64>> {
    Mlp::new(params.to_vec(), activation)?.forward(input)
}
