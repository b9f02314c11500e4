use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dot;

/// Linear SVM trained with Pegasos-style subgradient steps on the hinge loss.
/// The intercept is an extra constant input and is regularized with the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearSvm {
    /// `lambda = 1 / (c * n)`, step `1 / (lambda * t)`, one seeded shuffle of
    /// the rows per epoch.
    pub fn fit(x: &[Vec<f64>], y: &[f64], c: f64, epochs: usize, seed: u64) -> Self {
        let n = x.len();
        let d = x.first().map_or(0, Vec::len);
        let lambda = 1.0 / (c * n as f64);
        let mut w = vec![0.0; d + 1];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        let mut t = 0usize;
        for _ in 0..epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                t += 1;
                let eta = 1.0 / (lambda * t as f64);
                let sign = if y[i] > 0.5 { 1.0 } else { -1.0 };
                let margin = sign * (dot(&w[..d], &x[i]) + w[d]);
                let shrink = 1.0 - eta * lambda;
                w.iter_mut().for_each(|v| *v *= shrink);
                if margin < 1.0 {
                    for (wj, xj) in w[..d].iter_mut().zip(&x[i]) {
                        *wj += eta * sign * xj;
                    }
                    w[d] += eta * sign;
                }
            }
        }
        let bias = w.pop().unwrap_or(0.0);
        Self { weights: w, bias }
    }

    pub fn decision(&self, row: &[f64]) -> f64 {
        dot(&self.weights, row) + self.bias
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        self.decision(row) > 0.0
    }
}
