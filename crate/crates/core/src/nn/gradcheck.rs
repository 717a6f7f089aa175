use rayon::prelude::*;

use super::train::loss_and_grad;
use super::{cross_entropy, Network};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct GradCheckReport {
    pub checked: usize,
    /// Parameters outside tolerance as `(flat index, analytic, numeric)`.
    pub failures: Vec<(usize, f64, f64)>,
    pub max_rel_error: f64,
}

impl GradCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares back-propagated gradients of the mean batch loss against
/// central differences of width `2·step`, parameter by parameter.
/// A gradient passes within `rel_tol` relative error, or within `abs_tol`
/// absolute error when its magnitude is below `1e-3`.
pub fn check_gradients<N>(
    net: &N,
    batch: &[(N::Input, usize)],
    step: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<GradCheckReport>
where
    N: Network + Sync,
    N::Input: Sync,
{
    let (_, grads) = loss_and_grad(net, batch)?;
    let analytic: Vec<f64> = grads.params().concat();
    let mut slots: Vec<(usize, usize)> = Vec::with_capacity(analytic.len());
    for (s, p) in net.params().iter().enumerate() {
        slots.extend((0..p.len()).map(|i| (s, i)));
    }
    let mean_loss = |probe: &N| -> Result<f64> {
        let mut total = 0.0;
        for (x, y) in batch {
            total += cross_entropy(&probe.logits(x)?, *y);
        }
        Ok(total / batch.len() as f64)
    };
    let numeric: Vec<f64> = slots
        .par_chunks(512)
        .map(|chunk| {
            let mut probe = net.clone();
            let mut out = Vec::with_capacity(chunk.len());
            for &(s, i) in chunk {
                let orig = probe.params()[s][i];
                probe.params_mut()[s][i] = orig + step;
                let plus = mean_loss(&probe)?;
                probe.params_mut()[s][i] = orig - step;
                let minus = mean_loss(&probe)?;
                probe.params_mut()[s][i] = orig;
                out.push((plus - minus) / (2.0 * step));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    let mut report = GradCheckReport { checked: analytic.len(), failures: Vec::new(), max_rel_error: 0.0 };
    for (flat, (&a, &n)) in analytic.iter().zip(&numeric).enumerate() {
        let diff = (a - n).abs();
        let scale = a.abs().max(n.abs());
        if scale < 1e-3 {
            if diff > abs_tol {
                report.failures.push((flat, a, n));
            }
        } else {
            report.max_rel_error = report.max_rel_error.max(diff / scale);
            if diff / scale > rel_tol {
                report.failures.push((flat, a, n));
            }
        }
    }
    Ok(report)
}
