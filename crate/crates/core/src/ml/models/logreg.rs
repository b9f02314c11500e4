use serde::{Deserialize, Serialize};

use super::{dot, sigmoid};

/// L2-regularized logistic regression with an unpenalized intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogReg {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn log1p_exp(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Objective `(1/n) sum loss + lambda/(2n) |w|^2` and its gradient.
/// `params` holds the weights followed by the intercept.
pub fn logreg_objective(params: &[f64], x: &[Vec<f64>], y: &[f64], lambda: f64) -> (f64, Vec<f64>) {
    let d = params.len() - 1;
    let (w, b) = (&params[..d], params[d]);
    let n = x.len() as f64;
    let mut loss = 0.0;
    let mut grad = vec![0.0; d + 1];
    for (row, &t) in x.iter().zip(y) {
        let z = dot(w, row) + b;
        loss += log1p_exp(z) - t * z;
        let r = sigmoid(z) - t;
        for (g, v) in grad[..d].iter_mut().zip(row) {
            *g += r * v;
        }
        grad[d] += r;
    }
    let penalty: f64 = w.iter().map(|v| v * v).sum();
    for (g, wi) in grad[..d].iter_mut().zip(w) {
        *g = *g / n + lambda / n * wi;
    }
    grad[d] /= n;
    (loss / n + lambda / (2.0 * n) * penalty, grad)
}

impl LogReg {
    /// Full-batch gradient descent with Armijo backtracking until the
    /// gradient norm drops below `tol`.
    pub fn fit(x: &[Vec<f64>], y: &[f64], lambda: f64, tol: f64, max_iter: usize) -> Self {
        let d = x.first().map_or(0, Vec::len);
        let mut params = vec![0.0; d + 1];
        let (mut f, mut g) = logreg_objective(&params, x, y, lambda);
        let mut step = 1.0;
        let mut iterations = 0;
        let mut converged = false;
        while iterations < max_iter {
            let g2: f64 = g.iter().map(|v| v * v).sum();
            if g2.sqrt() < tol {
                converged = true;
                break;
            }
            iterations += 1;
            let mut accepted = None;
            while step > 1e-16 {
                let trial: Vec<f64> = params.iter().zip(&g).map(|(p, gi)| p - step * gi).collect();
                let (ft, gt) = logreg_objective(&trial, x, y, lambda);
                if ft <= f - 1e-4 * step * g2 {
                    accepted = Some((trial, ft, gt));
                    break;
                }
                step *= 0.5;
            }
            let Some((p, ft, gt)) = accepted else {
                // no descent possible at machine precision
                break;
            };
            params = p;
            f = ft;
            g = gt;
            step = (step * 2.0).min(1e3);
        }
        let bias = params.pop().unwrap_or(0.0);
        Self {
            weights: params,
            bias,
            iterations,
            converged,
        }
    }

    pub fn probability(&self, row: &[f64]) -> f64 {
        sigmoid(dot(&self.weights, row) + self.bias)
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        self.probability(row) > 0.5
    }
}
