use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Gaussian naive Bayes. Every variance is floored by
/// `var_smoothing * (largest feature variance)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    /// Index 0 is fake, 1 is true.
    pub log_prior: [f64; 2],
    pub mean: [Vec<f64>; 2],
    pub var: [Vec<f64>; 2],
}

fn mean_var(rows: &[&Vec<f64>], d: usize) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let mut mean = vec![0.0; d];
    for r in rows {
        for (m, v) in mean.iter_mut().zip(r.iter()) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut var = vec![0.0; d];
    for r in rows {
        for ((s, v), m) in var.iter_mut().zip(r.iter()).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    var.iter_mut().for_each(|s| *s /= n);
    (mean, var)
}

impl GaussianNb {
    pub fn fit(x: &[Vec<f64>], y: &[f64], var_smoothing: f64) -> Self {
        let d = x.first().map_or(0, Vec::len);
        let all: Vec<&Vec<f64>> = x.iter().collect();
        let (_, total_var) = mean_var(&all, d);
        let floor = var_smoothing * total_var.iter().cloned().fold(0.0, f64::max);
        // a dataset of constant columns still needs a positive variance
        let floor = if floor > 0.0 { floor } else { var_smoothing };
        let class = |c: f64| -> Vec<&Vec<f64>> {
            x.iter()
                .zip(y)
                .filter(|(_, &t)| t == c)
                .map(|(r, _)| r)
                .collect()
        };
        let (fake, real) = (class(0.0), class(1.0));
        let n = x.len() as f64;
        let (m0, mut v0) = mean_var(&fake, d);
        let (m1, mut v1) = mean_var(&real, d);
        v0.iter_mut().chain(v1.iter_mut()).for_each(|v| *v += floor);
        Self {
            log_prior: [(fake.len() as f64 / n).ln(), (real.len() as f64 / n).ln()],
            mean: [m0, m1],
            var: [v0, v1],
        }
    }

    pub fn log_joint(&self, row: &[f64]) -> [f64; 2] {
        let mut out = self.log_prior;
        for (c, o) in out.iter_mut().enumerate() {
            for ((v, m), s) in row.iter().zip(&self.mean[c]).zip(&self.var[c]) {
                *o -= 0.5 * (2.0 * PI * s).ln() + (v - m) * (v - m) / (2.0 * s);
            }
        }
        out
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        let [fake, real] = self.log_joint(row);
        real > fake
    }
}
