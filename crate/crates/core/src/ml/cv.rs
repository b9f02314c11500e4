//! Stratified k-fold cross-validation.
//!
//! History features are rebuilt inside every fold from the training articles
//! only: training rows get leave-one-out counts, test rows are counted against
//! the training set, and a test article found in the reference aborts the run.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Label};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::ml::features::{build_matrix, content_rows, ContentRow, FeatureConfig, FeatureMatrix};
use crate::ml::metrics::f1_scores;
use crate::ml::models::{fit, ModelKind, ModelSpec};
use crate::resources::Resources;
use crate::sourcefeat::HistoryIndex;

pub const DEFAULT_K: usize = 10;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvOptions {
    pub k: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for CvOptions {
    fn default() -> Self {
        Self {
            k: DEFAULT_K,
            seed: DEFAULT_SEED,
            exec: Execution::default(),
        }
    }
}

/// Fold index for each item. Each class is shuffled with the seeded
/// generator, the class lists are concatenated (fake first) and position `i`
/// goes to fold `i % k`, so fold sizes and per-class counts differ by at most
/// one.
pub fn stratified_folds(labels: &[Label], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::Config(format!("k must be at least 2, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = Vec::with_capacity(labels.len());
    for class in Label::ALL {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < k {
            return Err(Error::Folds {
                k,
                class: class.as_str().to_string(),
                count: members.len(),
            });
        }
        members.shuffle(&mut rng);
        order.extend(members);
    }
    let mut folds = vec![0; labels.len()];
    for (pos, &i) in order.iter().enumerate() {
        folds[i] = pos % k;
    }
    Ok(folds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold: usize,
    pub test_ids: Vec<String>,
    pub f1_micro: f64,
    pub f1_macro: f64,
    pub f1_weighted: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F1Means {
    pub f1_micro: f64,
    pub f1_macro: f64,
    pub f1_weighted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classifier: ModelKind,
    pub feature_config: String,
    pub features: Vec<String>,
    pub seed: u64,
    pub k: usize,
    pub folds: Vec<FoldResult>,
    pub means: F1Means,
}

fn split(folds: &[usize], fold: usize) -> (Vec<usize>, Vec<usize>) {
    (0..folds.len()).partition(|&i| folds[i] != fold)
}

fn fold_seed(seed: u64, fold: usize) -> u64 {
    seed.wrapping_add(fold as u64)
}

fn score_fold(
    spec: &ModelSpec,
    fold: usize,
    train: (&FeatureMatrix, &[Label]),
    test: (&FeatureMatrix, &[Label]),
) -> Result<FoldResult> {
    let fold_spec = spec.with_seed(fold_seed(spec.seed, fold));
    let model = fit(&fold_spec, train.0, train.1)?;
    let pred = model.predict(test.0)?;
    let s = f1_scores(test.1, &pred)?;
    Ok(FoldResult {
        fold,
        test_ids: test.0.ids.clone(),
        f1_micro: s.f1_micro,
        f1_macro: s.f1_macro,
        f1_weighted: s.f1_weighted,
    })
}

fn report(
    spec: &ModelSpec,
    feature_config: &str,
    features: Vec<String>,
    opts: &CvOptions,
    folds: Vec<FoldResult>,
) -> EvalReport {
    let k = folds.len() as f64;
    let mean = |f: fn(&FoldResult) -> f64| folds.iter().map(f).sum::<f64>() / k;
    let means = F1Means {
        f1_micro: mean(|f| f.f1_micro),
        f1_macro: mean(|f| f.f1_macro),
        f1_weighted: mean(|f| f.f1_weighted),
    };
    EvalReport {
        classifier: spec.kind,
        feature_config: feature_config.to_string(),
        features,
        seed: opts.seed,
        k: opts.k,
        folds,
        means,
    }
}

fn select_labels(labels: &[Label], idx: &[usize]) -> Vec<Label> {
    idx.iter().map(|&i| labels[i]).collect()
}

/// One fold of corpus-level evaluation against an explicit history
/// reference. Fails with [`Error::Leakage`] if any test article is part of
/// `reference`.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_fold(
    spec: &ModelSpec,
    corpus: &Corpus,
    content: &[ContentRow],
    config: &FeatureConfig,
    fold: usize,
    train: &[usize],
    test: &[usize],
    reference: &HistoryIndex,
) -> Result<FoldResult> {
    let articles = corpus.articles();
    if let Some(&i) = test.iter().find(|&&i| reference.contains(&articles[i].id)) {
        return Err(Error::Leakage(articles[i].id.clone()));
    }
    let labels = corpus.labels();
    let x_train = build_matrix(corpus, content, train, config, reference, true)?;
    let x_test = build_matrix(corpus, content, test, config, reference, false)?;
    score_fold(
        spec,
        fold,
        (&x_train, &select_labels(&labels, train)),
        (&x_test, &select_labels(&labels, test)),
    )
}

/// Cross-validation on a corpus with precomputed content rows.
pub fn cross_validate_with_content(
    spec: &ModelSpec,
    corpus: &Corpus,
    content: &[ContentRow],
    config: &FeatureConfig,
    opts: &CvOptions,
) -> Result<EvalReport> {
    if content.len() != corpus.len() {
        return Err(Error::LengthMismatch(content.len(), corpus.len()));
    }
    let folds = stratified_folds(&corpus.labels(), opts.k, opts.seed)?;
    let results = exec::map_range(opts.exec, opts.k, |f| {
        let (train, test) = split(&folds, f);
        let reference = HistoryIndex::new(train.iter().map(|&i| &corpus.articles()[i]));
        evaluate_fold(spec, corpus, content, config, f, &train, &test, &reference)
    });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(report(
        spec,
        config.label(),
        config.features.clone(),
        opts,
        results,
    ))
}

pub fn cross_validate(
    spec: &ModelSpec,
    corpus: &Corpus,
    config: &FeatureConfig,
    res: &Resources,
    opts: &CvOptions,
) -> Result<EvalReport> {
    let content = content_rows(corpus, res, opts.exec)?;
    cross_validate_with_content(spec, corpus, &content, config, opts)
}

/// Cross-validation on a ready-made feature matrix (no history rebuilding).
pub fn cross_validate_matrix(
    spec: &ModelSpec,
    x: &FeatureMatrix,
    y: &[Label],
    opts: &CvOptions,
) -> Result<EvalReport> {
    if x.n_rows() != y.len() {
        return Err(Error::LengthMismatch(x.n_rows(), y.len()));
    }
    let folds = stratified_folds(y, opts.k, opts.seed)?;
    let results = exec::map_range(opts.exec, opts.k, |f| {
        let (train, test) = split(&folds, f);
        score_fold(
            spec,
            f,
            (&x.subset(&train), &select_labels(y, &train)),
            (&x.subset(&test), &select_labels(y, &test)),
        )
    });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(report(spec, "custom", x.names.clone(), opts, results))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn folds_partition_and_balance(
            n_fake in 10usize..60,
            n_true in 10usize..60,
            k in 2usize..=10,
            seed in any::<u64>(),
        ) {
            let mut labels = vec![Label::Fake; n_fake];
            labels.extend(vec![Label::True; n_true]);
            let folds = stratified_folds(&labels, k, seed).unwrap();
            let mut sizes = vec![0usize; k];
            let mut fakes = vec![0usize; k];
            for (i, &f) in folds.iter().enumerate() {
                prop_assert!(f < k);
                sizes[f] += 1;
                if labels[i] == Label::Fake {
                    fakes[f] += 1;
                }
            }
            prop_assert_eq!(sizes.iter().sum::<usize>(), labels.len());
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            prop_assert!(fakes.iter().max().unwrap() - fakes.iter().min().unwrap() <= 1);
        }
    }

    #[test]
    fn too_few_per_class() {
        let labels = [Label::Fake, Label::Fake, Label::True];
        assert!(matches!(
            stratified_folds(&labels, 2, 1),
            Err(Error::Folds { k: 2, count: 1, .. })
        ));
        assert!(stratified_folds(&labels, 1, 1).is_err());
    }

    #[test]
    fn folds_depend_on_seed_only() {
        let labels: Vec<Label> = (0..40)
            .map(|i| if i % 2 == 0 { Label::Fake } else { Label::True })
            .collect();
        assert_eq!(
            stratified_folds(&labels, 5, 3).unwrap(),
            stratified_folds(&labels, 5, 3).unwrap()
        );
        assert_ne!(
            stratified_folds(&labels, 5, 3).unwrap(),
            stratified_folds(&labels, 5, 4).unwrap()
        );
    }
}
