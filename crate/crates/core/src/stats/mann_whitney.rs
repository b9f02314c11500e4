//! Two-sided Mann-Whitney U test.
//!
//! Midranks handle ties. Small tie-free samples (`n_a + n_b <= 12`) use the
//! exact null distribution of U; everything else uses the normal
//! approximation with tie-corrected variance and a 0.5 continuity correction.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

pub const EXACT_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MannWhitney {
    /// `min(U_a, U_b)`.
    pub u: f64,
    /// U of the first sample: pairs `(x in a, y in b)` with `x > y`, ties count half.
    pub u_a: f64,
    pub p_value: f64,
    pub method: PMethod,
    pub has_ties: bool,
    /// Every pooled value equal; p is 1 by convention.
    pub all_ties: bool,
    pub n_a: usize,
    pub n_b: usize,
}

/// Midranks (1-based) of `values` and the tie correction term `sum(t^3 - t)`.
pub fn midranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite values"));
    let mut ranks = vec![0.0; values.len()];
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    (ranks, tie_term)
}

struct Ranked {
    u_a: f64,
    tie_term: f64,
    n_a: usize,
    n_b: usize,
}

fn rank_samples(a: &[f64], b: &[f64]) -> Result<Ranked> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("both samples must be nonempty".into()));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::Precondition(
            "samples contain non-finite values".into(),
        ));
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, tie_term) = midranks(&pooled);
    let n_a = a.len();
    let rank_sum: f64 = ranks[..n_a].iter().sum();
    Ok(Ranked {
        u_a: rank_sum - (n_a * (n_a + 1)) as f64 / 2.0,
        tie_term,
        n_a,
        n_b: b.len(),
    })
}

pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<MannWhitney> {
    let r = rank_samples(a, b)?;
    let has_ties = r.tie_term > 0.0;
    let n = r.n_a + r.n_b;
    let (p_value, method) = if !has_ties && n <= EXACT_MAX_N {
        (exact_p(r.u_a, r.n_a, r.n_b), PMethod::Exact)
    } else {
        (normal_p(r.u_a, r.n_a, r.n_b, r.tie_term), PMethod::Normal)
    };
    let n_pairs = (r.n_a * r.n_b) as f64;
    Ok(MannWhitney {
        u: r.u_a.min(n_pairs - r.u_a),
        u_a: r.u_a,
        p_value,
        method,
        has_ties,
        all_ties: variance(r.n_a, r.n_b, r.tie_term) <= 0.0,
        n_a: r.n_a,
        n_b: r.n_b,
    })
}

/// The normal-approximation p-value regardless of sample size.
pub fn mann_whitney_normal_p(a: &[f64], b: &[f64]) -> Result<f64> {
    let r = rank_samples(a, b)?;
    Ok(normal_p(r.u_a, r.n_a, r.n_b, r.tie_term))
}

fn variance(n_a: usize, n_b: usize, tie_term: f64) -> f64 {
    let n = (n_a + n_b) as f64;
    let base = (n_a * n_b) as f64 / 12.0;
    if n < 2.0 {
        return 0.0;
    }
    base * ((n + 1.0) - tie_term / (n * (n - 1.0)))
}

fn normal_p(u_a: f64, n_a: usize, n_b: usize, tie_term: f64) -> f64 {
    let var = variance(n_a, n_b, tie_term);
    if var <= 0.0 {
        return 1.0;
    }
    let mean = (n_a * n_b) as f64 / 2.0;
    let z = ((u_a - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let std_normal = Normal::new(0.0, 1.0).expect("unit normal");
    (2.0 * (1.0 - std_normal.cdf(z))).min(1.0)
}

/// Null distribution of U for tie-free samples: `counts[u]` is the number of
/// rank assignments giving that U, out of `C(n_a + n_b, n_a)`.
pub fn u_null_counts(n_a: usize, n_b: usize) -> Vec<f64> {
    // counts[i][j][u]: arrangements of i a-items and j b-items with statistic u,
    // built by deciding whether the largest item belongs to a or b.
    let max_u = n_a * n_b;
    let mut prev: Vec<Vec<f64>> = vec![vec![0.0; max_u + 1]; n_b + 1];
    for row in prev.iter_mut() {
        row[0] = 1.0;
    }
    for i in 1..=n_a {
        let mut cur: Vec<Vec<f64>> = vec![vec![0.0; max_u + 1]; n_b + 1];
        cur[0][0] = 1.0;
        for j in 1..=n_b {
            for u in 0..=i * j {
                // largest is from a: it beats all j b-items
                let from_a = if u >= j { prev[j][u - j] } else { 0.0 };
                let from_b = cur[j - 1][u];
                cur[j][u] = from_a + from_b;
            }
        }
        prev = cur;
    }
    prev[n_b].clone()
}

fn exact_p(u_a: f64, n_a: usize, n_b: usize) -> f64 {
    let counts = u_null_counts(n_a, n_b);
    let total: f64 = counts.iter().sum();
    let u = u_a.round() as usize;
    let lower: f64 = counts[..=u].iter().sum::<f64>() / total;
    let upper: f64 = counts[u..].iter().sum::<f64>() / total;
    (2.0 * lower.min(upper)).min(1.0)
}
