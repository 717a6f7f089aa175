use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::Network;
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerKind {
    Sgd,
    Adam,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub optimizer: OptimizerKind,
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_epsilon: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            optimizer: OptimizerKind::Adam,
            learning_rate: 1e-3,
            epochs: 50,
            batch_size: 32,
            seed: 0,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_epsilon: 1e-8,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.epochs == 0 {
            return bad("epochs must be at least 1");
        }
        if self.batch_size == 0 {
            return bad("batch_size must be at least 1");
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return bad("learning_rate must be positive");
        }
        if !(0.0..1.0).contains(&self.adam_beta1) || !(0.0..1.0).contains(&self.adam_beta2) {
            return bad("adam betas must lie in [0, 1)");
        }
        if !(self.adam_epsilon > 0.0) {
            return bad("adam_epsilon must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct TrainOutcome<N> {
    pub network: N,
    /// Mean training loss of each epoch.
    pub loss_trace: Vec<f64>,
}

enum Optimizer {
    Sgd,
    Adam { m: Vec<Vec<f64>>, v: Vec<Vec<f64>>, t: i32 },
}

impl Optimizer {
    fn new<N: Network>(kind: OptimizerKind, net: &N) -> Self {
        match kind {
            OptimizerKind::Sgd => Optimizer::Sgd,
            OptimizerKind::Adam => {
                let zeros: Vec<Vec<f64>> = net.params().iter().map(|s| vec![0.0; s.len()]).collect();
                Optimizer::Adam { m: zeros.clone(), v: zeros, t: 0 }
            }
        }
    }

    fn step(&mut self, cfg: &TrainConfig, params: Vec<&mut [f64]>, grads: Vec<&[f64]>) {
        let lr = cfg.learning_rate;
        match self {
            Optimizer::Sgd => {
                for (p, g) in params.into_iter().zip(grads) {
                    for (pi, gi) in p.iter_mut().zip(g) {
                        *pi -= lr * gi;
                    }
                }
            }
            Optimizer::Adam { m, v, t } => {
                *t += 1;
                let (b1, b2) = (cfg.adam_beta1, cfg.adam_beta2);
                let c1 = 1.0 - b1.powi(*t);
                let c2 = 1.0 - b2.powi(*t);
                for (((p, g), m), v) in params.into_iter().zip(grads).zip(m.iter_mut()).zip(v.iter_mut()) {
                    for i in 0..p.len() {
                        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
                        v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
                        let mhat = m[i] / c1;
                        let vhat = v[i] / c2;
                        p[i] -= lr * mhat / (vhat.sqrt() + cfg.adam_epsilon);
                    }
                }
            }
        }
    }
}

/// Mean loss and mean gradient over `batch`.
pub fn loss_and_grad<N: Network>(net: &N, batch: &[(N::Input, usize)]) -> Result<(f64, N)> {
    if batch.is_empty() {
        return Err(Error::InvalidArgument("empty batch".into()));
    }
    let mut grads = net.zeros_like();
    let mut loss = 0.0;
    for (x, y) in batch {
        loss += net.accumulate_gradient(x, *y, &mut grads)?;
    }
    let scale = 1.0 / batch.len() as f64;
    for s in grads.params_mut() {
        s.iter_mut().for_each(|g| *g *= scale);
    }
    Ok((loss * scale, grads))
}

/// Mini-batch training with a seeded per-epoch shuffle.
pub fn train<N: Network>(mut net: N, data: &[(N::Input, usize)], cfg: &TrainConfig) -> Result<TrainOutcome<N>> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::InvalidArgument("no training samples".into()));
    }
    let mut rng = rng::stream(cfg.seed, &[rng::tag("shuffle")]);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut opt = Optimizer::new(cfg.optimizer, &net);
    let mut grads = net.zeros_like();
    let mut loss_trace = Vec::with_capacity(cfg.epochs);
    for epoch in 1..=cfg.epochs {
        order.shuffle(&mut rng);
        let mut total = 0.0;
        for chunk in order.chunks(cfg.batch_size) {
            for s in grads.params_mut() {
                s.fill(0.0);
            }
            for &i in chunk {
                let (x, y) = &data[i];
                total += net.accumulate_gradient(x, *y, &mut grads)?;
            }
            let scale = 1.0 / chunk.len() as f64;
            for s in grads.params_mut() {
                s.iter_mut().for_each(|g| *g *= scale);
            }
            opt.step(cfg, net.params_mut(), grads.params());
        }
        let mean = total / data.len() as f64;
        let diverged = !mean.is_finite() || net.params().iter().any(|s| s.iter().any(|p| !p.is_finite()));
        if diverged {
            return Err(Error::Divergence { epoch });
        }
        log::debug!("epoch {epoch}: loss {mean:.6}");
        loss_trace.push(mean);
    }
    Ok(TrainOutcome { network: net, loss_trace })
}
