use serde::{Deserialize, Serialize};

use super::sigmoid;
use super::tree::midpoint;

/// Depth-1 tree. `feature: None` is a constant stump returning `left`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stump {
    pub feature: Option<usize>,
    pub threshold: f64,
    pub left: f64,
    pub right: f64,
}

impl Stump {
    fn constant(value: f64) -> Self {
        Self {
            feature: None,
            threshold: 0.0,
            left: value,
            right: value,
        }
    }

    pub fn eval(&self, row: &[f64]) -> f64 {
        match self.feature {
            Some(f) if row[f] > self.threshold => self.right,
            _ => self.left,
        }
    }
}

/// Sorted row order for every feature, shared across boosting rounds.
fn sorted_orders(x: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let d = x.first().map_or(0, Vec::len);
    (0..d)
        .map(|f| {
            let mut idx: Vec<usize> = (0..x.len()).collect();
            idx.sort_by(|&a, &b| x[a][f].total_cmp(&x[b][f]));
            idx
        })
        .collect()
}

/// Stump with the smallest weighted misclassification, outputs in {-1, +1}.
/// Returns the stump and its weighted error.
fn weighted_stump(x: &[Vec<f64>], y: &[f64], w: &[f64], orders: &[Vec<usize>]) -> (Stump, f64) {
    let w_pos: f64 = y
        .iter()
        .zip(w)
        .filter(|(t, _)| **t > 0.5)
        .map(|(_, v)| v)
        .sum();
    let w_neg: f64 = w.iter().sum::<f64>() - w_pos;
    let (mut best, mut best_err) = if w_pos > w_neg {
        (Stump::constant(1.0), w_neg)
    } else {
        (Stump::constant(-1.0), w_pos)
    };
    for (f, order) in orders.iter().enumerate() {
        let (mut l_pos, mut l_neg) = (0.0, 0.0);
        for k in 1..order.len() {
            let prev = order[k - 1];
            if y[prev] > 0.5 {
                l_pos += w[prev];
            } else {
                l_neg += w[prev];
            }
            let (lo, hi) = (x[prev][f], x[order[k]][f]);
            if lo == hi {
                continue;
            }
            // left predicts +1 and right -1, or the reverse
            let err_a = l_neg + (w_pos - l_pos);
            let err_b = l_pos + (w_neg - l_neg);
            let (err, left) = if err_a <= err_b {
                (err_a, 1.0)
            } else {
                (err_b, -1.0)
            };
            if err < best_err {
                best_err = err;
                best = Stump {
                    feature: Some(f),
                    threshold: midpoint(lo, hi),
                    left,
                    right: -left,
                };
            }
        }
    }
    (best, best_err.max(0.0))
}

/// Discrete AdaBoost (SAMME, two classes) over decision stumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaBoost {
    pub stumps: Vec<Stump>,
    pub alphas: Vec<f64>,
}

impl AdaBoost {
    pub fn fit(x: &[Vec<f64>], y: &[f64], rounds: usize) -> Self {
        let n = x.len();
        let orders = sorted_orders(x);
        let mut w = vec![1.0 / n as f64; n];
        let mut stumps = Vec::new();
        let mut alphas = Vec::new();
        for _ in 0..rounds {
            let (stump, err) = weighted_stump(x, y, &w, &orders);
            if err <= 0.0 {
                // a perfect stump ends boosting
                stumps.push(stump);
                alphas.push(1.0);
                break;
            }
            if err >= 0.5 {
                if stumps.is_empty() {
                    stumps.push(stump);
                    alphas.push(1.0);
                }
                break;
            }
            let alpha = ((1.0 - err) / err).ln();
            for (i, wi) in w.iter_mut().enumerate() {
                let sign = if y[i] > 0.5 { 1.0 } else { -1.0 };
                if stump.eval(&x[i]) != sign {
                    *wi *= alpha.exp();
                }
            }
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= total);
            stumps.push(stump);
            alphas.push(alpha);
        }
        Self { stumps, alphas }
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        self.stumps
            .iter()
            .zip(&self.alphas)
            .map(|(s, a)| a * s.eval(row))
            .sum()
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        self.score(row) > 0.0
    }
}

/// Least-squares stump on residuals `r`, with Newton leaf values
/// `sum r / sum h`.
fn regression_stump(x: &[Vec<f64>], r: &[f64], h: &[f64], orders: &[Vec<usize>]) -> Stump {
    let n = r.len() as f64;
    let total: f64 = r.iter().sum();
    let mut best_score = total * total / n;
    let mut best: Option<(usize, f64)> = None;
    for (f, order) in orders.iter().enumerate() {
        let mut left = 0.0;
        for k in 1..order.len() {
            let prev = order[k - 1];
            left += r[prev];
            let (lo, hi) = (x[prev][f], x[order[k]][f]);
            if lo == hi {
                continue;
            }
            let nl = k as f64;
            let right = total - left;
            let score = left * left / nl + right * right / (n - nl);
            if score > best_score + 1e-12 * best_score.abs() {
                best_score = score;
                best = Some((f, midpoint(lo, hi)));
            }
        }
    }
    let newton = |members: &mut dyn Iterator<Item = usize>| {
        let (mut num, mut den) = (0.0, 0.0);
        for i in members {
            num += r[i];
            den += h[i];
        }
        if den.abs() < 1e-150 {
            0.0
        } else {
            num / den
        }
    };
    match best {
        None => Stump::constant(newton(&mut (0..r.len()))),
        Some((f, t)) => Stump {
            feature: Some(f),
            threshold: t,
            left: newton(&mut (0..r.len()).filter(|&i| x[i][f] <= t)),
            right: newton(&mut (0..r.len()).filter(|&i| x[i][f] > t)),
        },
    }
}

/// Gradient boosting of regression stumps on the logistic loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gbdt {
    pub init: f64,
    pub learning_rate: f64,
    pub stumps: Vec<Stump>,
}

impl Gbdt {
    pub fn fit(x: &[Vec<f64>], y: &[f64], rounds: usize, learning_rate: f64) -> Self {
        let n = x.len();
        let p = y.iter().sum::<f64>() / n as f64;
        let init = (p / (1.0 - p)).ln();
        let orders = sorted_orders(x);
        let mut raw = vec![init; n];
        let mut stumps = Vec::with_capacity(rounds);
        for _ in 0..rounds {
            let prob: Vec<f64> = raw.iter().map(|&f| sigmoid(f)).collect();
            let r: Vec<f64> = y.iter().zip(&prob).map(|(t, q)| t - q).collect();
            let h: Vec<f64> = prob.iter().map(|q| q * (1.0 - q)).collect();
            let stump = regression_stump(x, &r, &h, &orders);
            for (f, row) in raw.iter_mut().zip(x) {
                *f += learning_rate * stump.eval(row);
            }
            stumps.push(stump);
        }
        Self {
            init,
            learning_rate,
            stumps,
        }
    }

    pub fn raw_score(&self, row: &[f64]) -> f64 {
        self.init + self.learning_rate * self.stumps.iter().map(|s| s.eval(row)).sum::<f64>()
    }

    pub fn probability(&self, row: &[f64]) -> f64 {
        sigmoid(self.raw_score(row))
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        self.probability(row) > 0.5
    }
}
