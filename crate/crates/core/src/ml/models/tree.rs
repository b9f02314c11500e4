use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    Leaf {
        p_true: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

/// CART classification tree on Gini impurity; rows with
/// `x[feature] <= threshold` go left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<Node>,
}

struct Builder<'a> {
    x: &'a [Vec<f64>],
    y: &'a [f64],
    max_features: usize,
    max_depth: Option<usize>,
    min_leaf: usize,
    rng: ChaCha8Rng,
    nodes: Vec<Node>,
}

/// Midpoint between two distinct sorted values that still separates them.
pub(crate) fn midpoint(lo: f64, hi: f64) -> f64 {
    let m = lo + (hi - lo) / 2.0;
    if m >= hi {
        lo
    } else {
        m
    }
}

impl Builder<'_> {
    fn grow(&mut self, idx: Vec<usize>, depth: usize) -> usize {
        let n = idx.len();
        let n_true = idx.iter().filter(|&&i| self.y[i] > 0.5).count();
        let leaf = Node::Leaf {
            p_true: n_true as f64 / n as f64,
        };
        let at_limit = self.max_depth.is_some_and(|m| depth >= m);
        if n_true == 0 || n_true == n || n < 2 * self.min_leaf || at_limit {
            self.nodes.push(leaf);
            return self.nodes.len() - 1;
        }
        let Some((feature, threshold)) = self.best_split(&idx) else {
            self.nodes.push(leaf);
            return self.nodes.len() - 1;
        };
        let (l, r): (Vec<usize>, Vec<usize>) =
            idx.iter().partition(|&&i| self.x[i][feature] <= threshold);
        let me = self.nodes.len();
        self.nodes.push(leaf);
        let left = self.grow(l, depth + 1);
        let right = self.grow(r, depth + 1);
        self.nodes[me] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        me
    }

    /// Examines features in random order until `max_features` non-constant
    /// ones have been scored.
    fn best_split(&mut self, idx: &[usize]) -> Option<(usize, f64)> {
        let d = self.x[0].len();
        let mut features: Vec<usize> = (0..d).collect();
        features.shuffle(&mut self.rng);
        let n = idx.len() as f64;
        let total_true = idx.iter().filter(|&&i| self.y[i] > 0.5).count() as f64;
        let mut best: Option<(f64, usize, f64)> = None;
        let mut visited = 0;
        let mut sorted = idx.to_vec();
        for f in features {
            if visited >= self.max_features {
                break;
            }
            sorted.sort_by(|&a, &b| self.x[a][f].total_cmp(&self.x[b][f]));
            let first = self.x[sorted[0]][f];
            let last = self.x[sorted[sorted.len() - 1]][f];
            if first == last {
                continue;
            }
            visited += 1;
            let mut left_true = 0.0;
            for pos in 1..sorted.len() {
                if self.y[sorted[pos - 1]] > 0.5 {
                    left_true += 1.0;
                }
                let lo = self.x[sorted[pos - 1]][f];
                let hi = self.x[sorted[pos]][f];
                if lo == hi || pos < self.min_leaf || sorted.len() - pos < self.min_leaf {
                    continue;
                }
                let nl = pos as f64;
                let nr = n - nl;
                let right_true = total_true - left_true;
                // maximizing sum_c count^2 / size over children minimizes weighted Gini
                let score = (left_true.powi(2) + (nl - left_true).powi(2)) / nl
                    + (right_true.powi(2) + (nr - right_true).powi(2)) / nr;
                if best.is_none_or(|(s, _, _)| score > s) {
                    best = Some((score, f, midpoint(lo, hi)));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }
}

impl DecisionTree {
    pub fn fit(
        x: &[Vec<f64>],
        y: &[f64],
        idx: Vec<usize>,
        max_features: usize,
        max_depth: Option<usize>,
        min_leaf: usize,
        rng: ChaCha8Rng,
    ) -> Self {
        let mut b = Builder {
            x,
            y,
            max_features: max_features.max(1),
            max_depth,
            min_leaf: min_leaf.max(1),
            rng,
            nodes: Vec::new(),
        };
        b.grow(idx, 0);
        Self { nodes: b.nodes }
    }

    pub fn p_true(&self, row: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { p_true } => return *p_true,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    i = if row[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    }
                }
            }
        }
    }
}

/// Bagged Gini trees with `floor(sqrt(d))` candidate features per split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    pub trees: Vec<DecisionTree>,
}

impl RandomForest {
    /// Tree `t` draws its bootstrap sample and feature orders from stream `t`
    /// of a generator seeded with `seed`, so each tree is reproducible alone.
    pub fn fit(
        x: &[Vec<f64>],
        y: &[f64],
        n_trees: usize,
        max_depth: Option<usize>,
        min_leaf: usize,
        seed: u64,
    ) -> Self {
        let n = x.len();
        let d = x.first().map_or(0, Vec::len);
        let max_features = ((d as f64).sqrt().floor() as usize).max(1);
        let trees = (0..n_trees)
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t as u64);
                let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
                DecisionTree::fit(x, y, idx, max_features, max_depth, min_leaf, rng)
            })
            .collect();
        Self { trees }
    }

    pub fn p_true(&self, row: &[f64]) -> f64 {
        self.trees.iter().map(|t| t.p_true(row)).sum::<f64>() / self.trees.len() as f64
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        self.p_true(row) > 0.5
    }
}
