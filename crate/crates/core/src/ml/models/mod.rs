//! From-scratch binary classifiers. Labels are coded `true = 1`, `fake = 0`.

mod boost;
mod logreg;
mod nb;
mod svm;
mod tree;

pub use boost::{AdaBoost, Gbdt, Stump};
pub use logreg::{logreg_objective, LogReg};
pub use nb::GaussianNb;
pub use svm::LinearSvm;
pub use tree::{DecisionTree, RandomForest};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::ml::features::FeatureMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Logreg,
    LinearSvm,
    GaussianNb,
    RandomForest,
    AdaboostStumps,
    GbdtStumps,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Logreg,
        ModelKind::LinearSvm,
        ModelKind::GaussianNb,
        ModelKind::RandomForest,
        ModelKind::AdaboostStumps,
        ModelKind::GbdtStumps,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Logreg => "logreg",
            ModelKind::LinearSvm => "linear_svm",
            ModelKind::GaussianNb => "gaussian_nb",
            ModelKind::RandomForest => "random_forest",
            ModelKind::AdaboostStumps => "adaboost_stumps",
            ModelKind::GbdtStumps => "gbdt_stumps",
        }
    }

    /// Row label used in rendered tables.
    pub fn display_name(self) -> &'static str {
        match self {
            ModelKind::Logreg => "Logistic Regression",
            ModelKind::LinearSvm => "SVM (Linear Kernel)",
            ModelKind::GaussianNb => "Gaussian Naive Bayes",
            ModelKind::RandomForest => "Random Forest",
            ModelKind::AdaboostStumps => "AdaBoost",
            ModelKind::GbdtStumps => "Gradient Boosting",
        }
    }

    /// Whether the model z-scores its inputs on the training data.
    pub fn standardizes(self) -> bool {
        matches!(self, ModelKind::Logreg | ModelKind::LinearSvm)
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .or(match s {
                "lr" | "logistic" => Some(ModelKind::Logreg),
                "svm" => Some(ModelKind::LinearSvm),
                "nb" => Some(ModelKind::GaussianNb),
                "rf" | "forest" => Some(ModelKind::RandomForest),
                "adaboost" => Some(ModelKind::AdaboostStumps),
                "gbdt" => Some(ModelKind::GbdtStumps),
                _ => None,
            })
            .ok_or_else(|| Error::Unknown {
                kind: "classifier",
                name: s.to_string(),
            })
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Hyperparams {
    pub logreg_lambda: f64,
    pub logreg_tol: f64,
    pub logreg_max_iter: usize,
    pub svm_c: f64,
    pub svm_epochs: usize,
    pub nb_var_smoothing: f64,
    pub forest_trees: usize,
    pub forest_max_depth: Option<usize>,
    pub forest_min_leaf: usize,
    pub adaboost_rounds: usize,
    pub gbdt_rounds: usize,
    pub gbdt_learning_rate: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Self {
            logreg_lambda: 1.0,
            logreg_tol: 1e-6,
            logreg_max_iter: 5000,
            svm_c: 1.0,
            svm_epochs: 200,
            nb_var_smoothing: 1e-9,
            forest_trees: 100,
            forest_max_depth: None,
            forest_min_leaf: 1,
            adaboost_rounds: 100,
            gbdt_rounds: 100,
            gbdt_learning_rate: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    #[serde(default)]
    pub params: Hyperparams,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            params: Hyperparams::default(),
            seed: 42,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Per-column z-scoring fitted on training rows. Constant columns are only
/// centered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &[Vec<f64>]) -> Self {
        let d = x.first().map_or(0, Vec::len);
        let n = x.len() as f64;
        let mut mean = vec![0.0; d];
        for row in x {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for row in x {
            for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let scale = var
            .into_iter()
            .map(|s| {
                let sd = (s / n).sqrt();
                if sd > 0.0 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Self { mean, scale }
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(&self.mean)
            .zip(&self.scale)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    Logreg(LogReg),
    LinearSvm(LinearSvm),
    GaussianNb(GaussianNb),
    RandomForest(RandomForest),
    AdaboostStumps(AdaBoost),
    GbdtStumps(Gbdt),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub spec: ModelSpec,
    /// Training schema; prediction input must have exactly these columns.
    pub features: Vec<String>,
    pub scaler: Option<Standardizer>,
    pub model: Model,
}

fn check_training_data(x: &FeatureMatrix, y: &[Label]) -> Result<()> {
    if x.n_rows() != y.len() {
        return Err(Error::LengthMismatch(x.n_rows(), y.len()));
    }
    if x.n_cols() == 0 {
        return Err(Error::Training("no feature columns".into()));
    }
    x.check_finite()?;
    let n_true = y.iter().filter(|&&l| l == Label::True).count();
    if n_true == 0 || n_true == y.len() {
        return Err(Error::Training(
            "training labels contain a single class".into(),
        ));
    }
    Ok(())
}

pub fn fit(spec: &ModelSpec, x: &FeatureMatrix, y: &[Label]) -> Result<TrainedModel> {
    check_training_data(x, y)?;
    let yv: Vec<f64> = y.iter().map(|l| l.indicator()).collect();
    let scaler = spec.kind.standardizes().then(|| Standardizer::fit(&x.rows));
    let rows: Vec<Vec<f64>> = match &scaler {
        Some(s) => x.rows.iter().map(|r| s.apply(r)).collect(),
        None => x.rows.clone(),
    };
    let p = &spec.params;
    let model = match spec.kind {
        ModelKind::Logreg => Model::Logreg(LogReg::fit(
            &rows,
            &yv,
            p.logreg_lambda,
            p.logreg_tol,
            p.logreg_max_iter,
        )),
        ModelKind::LinearSvm => {
            Model::LinearSvm(LinearSvm::fit(&rows, &yv, p.svm_c, p.svm_epochs, spec.seed))
        }
        ModelKind::GaussianNb => Model::GaussianNb(GaussianNb::fit(&rows, &yv, p.nb_var_smoothing)),
        ModelKind::RandomForest => Model::RandomForest(RandomForest::fit(
            &rows,
            &yv,
            p.forest_trees,
            p.forest_max_depth,
            p.forest_min_leaf,
            spec.seed,
        )),
        ModelKind::AdaboostStumps => {
            Model::AdaboostStumps(AdaBoost::fit(&rows, &yv, p.adaboost_rounds))
        }
        ModelKind::GbdtStumps => {
            Model::GbdtStumps(Gbdt::fit(&rows, &yv, p.gbdt_rounds, p.gbdt_learning_rate))
        }
    };
    Ok(TrainedModel {
        spec: *spec,
        features: x.names.clone(),
        scaler,
        model,
    })
}

impl TrainedModel {
    /// Input rows reordered to the training schema and scaled if needed.
    fn prepare(&self, x: &FeatureMatrix) -> Result<Vec<Vec<f64>>> {
        let missing: Vec<String> = self
            .features
            .iter()
            .filter(|f| !x.names.contains(f))
            .cloned()
            .collect();
        let extra: Vec<String> = x
            .names
            .iter()
            .filter(|f| !self.features.contains(f))
            .cloned()
            .collect();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(Error::Schema { missing, extra });
        }
        x.check_finite()?;
        let order: Vec<usize> = self
            .features
            .iter()
            .map(|f| x.names.iter().position(|n| n == f).expect("checked"))
            .collect();
        Ok(x.rows
            .iter()
            .map(|r| {
                let row: Vec<f64> = order.iter().map(|&j| r[j]).collect();
                match &self.scaler {
                    Some(s) => s.apply(&row),
                    None => row,
                }
            })
            .collect())
    }

    pub fn predict(&self, x: &FeatureMatrix) -> Result<Vec<Label>> {
        let rows = self.prepare(x)?;
        Ok(rows
            .iter()
            .map(|r| {
                let is_true = match &self.model {
                    Model::Logreg(m) => m.predict(r),
                    Model::LinearSvm(m) => m.predict(r),
                    Model::GaussianNb(m) => m.predict(r),
                    Model::RandomForest(m) => m.predict(r),
                    Model::AdaboostStumps(m) => m.predict(r),
                    Model::GbdtStumps(m) => m.predict(r),
                };
                if is_true {
                    Label::True
                } else {
                    Label::Fake
                }
            })
            .collect())
    }

    /// P(true) per row, for the probabilistic models (logreg, gbdt).
    pub fn predict_proba(&self, x: &FeatureMatrix) -> Result<Option<Vec<f64>>> {
        let rows = self.prepare(x)?;
        Ok(match &self.model {
            Model::Logreg(m) => Some(rows.iter().map(|r| m.probability(r)).collect()),
            Model::GbdtStumps(m) => Some(rows.iter().map(|r| m.probability(r)).collect()),
            _ => None,
        })
    }
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
