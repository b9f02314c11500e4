//! Feature registry, named feature configurations and matrix assembly.

use std::collections::HashSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Label, NewsArticle};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::resources::Resources;
use crate::sentiment::{sentence_labels, SentimentProfile, SentimentSequenceProfile};
use crate::sourcefeat::{author_count, HistoryFeatures, HistoryIndex};
use crate::textfeat::{flesch_reading_ease_with, ncsl_counts, surface_counts_with, typo_rate};

/// Every feature the extractors can produce, in canonical column order.
pub const FEATURE_NAMES: [&str; 27] = [
    "n_authors",
    "p_pos",
    "p_neu",
    "p_neg",
    "seq_pos_pos",
    "seq_pos_neg",
    "seq_pos_neu",
    "seq_neg_pos",
    "seq_neg_neg",
    "seq_neg_neu",
    "seq_neu_pos",
    "seq_neu_neg",
    "seq_neu_neu",
    "n_ncsl_fake_only",
    "n_ncsl_true_only",
    "flesch_score",
    "n_title_words",
    "n_chars",
    "n_special",
    "n_words",
    "n_sentences",
    "n_digits",
    "typo_rate",
    "words_per_sentence",
    "chars_per_word",
    "past_fake",
    "past_true",
];

/// Columns that depend only on the article itself.
pub const N_CONTENT: usize = 25;
pub const SOURCE3: [&str; 3] = ["n_authors", "past_fake", "past_true"];
pub const SELECTED13: [&str; 13] = [
    "n_authors",
    "past_fake",
    "past_true",
    "n_ncsl_fake_only",
    "n_ncsl_true_only",
    "flesch_score",
    "n_words",
    "n_title_words",
    "n_chars",
    "n_special",
    "typo_rate",
    "words_per_sentence",
    "chars_per_word",
];

pub fn feature_index(name: &str) -> Option<usize> {
    FEATURE_NAMES.iter().position(|n| *n == name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigName {
    #[serde(rename = "all26")]
    All26,
    #[serde(rename = "source3")]
    Source3,
    #[serde(rename = "content23")]
    Content23,
    #[serde(rename = "selected13")]
    Selected13,
    Custom,
}

impl ConfigName {
    pub fn as_str(self) -> &'static str {
        match self {
            ConfigName::All26 => "all26",
            ConfigName::Source3 => "source3",
            ConfigName::Content23 => "content23",
            ConfigName::Selected13 => "selected13",
            ConfigName::Custom => "custom",
        }
    }
}

/// A named, ordered subset of the registry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub name: ConfigName,
    pub features: Vec<String>,
}

impl FeatureConfig {
    pub fn all26() -> Self {
        Self::from_names(ConfigName::All26, FEATURE_NAMES)
    }

    pub fn source3() -> Self {
        Self::from_names(ConfigName::Source3, SOURCE3)
    }

    pub fn content23() -> Self {
        let names = FEATURE_NAMES.into_iter().filter(|n| !SOURCE3.contains(n));
        Self::from_names(ConfigName::Content23, names)
    }

    pub fn selected13() -> Self {
        Self::from_names(ConfigName::Selected13, SELECTED13)
    }

    /// A custom list; names must be registry names without repeats.
    pub fn custom<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut features = Vec::new();
        for n in names {
            let n = n.as_ref().trim();
            if feature_index(n).is_none() {
                return Err(Error::Unknown {
                    kind: "feature",
                    name: n.to_string(),
                });
            }
            if !seen.insert(n.to_string()) {
                return Err(Error::Config(format!("feature `{n}` listed twice")));
            }
            features.push(n.to_string());
        }
        if features.is_empty() {
            return Err(Error::Config("feature list is empty".into()));
        }
        Ok(Self {
            name: ConfigName::Custom,
            features,
        })
    }

    fn from_names<'a>(name: ConfigName, names: impl IntoIterator<Item = &'a str>) -> Self {
        Self {
            name,
            features: names.into_iter().map(String::from).collect(),
        }
    }

    pub fn label(&self) -> &'static str {
        self.name.as_str()
    }

    fn indices(&self) -> Vec<usize> {
        self.features
            .iter()
            .map(|n| feature_index(n).expect("validated feature name"))
            .collect()
    }

    fn uses_history(&self) -> bool {
        self.features
            .iter()
            .any(|n| n == "past_fake" || n == "past_true")
    }
}

impl FromStr for FeatureConfig {
    type Err = Error;

    /// A preset name, or a comma-separated list of registry names.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "all26" | "all" => Ok(Self::all26()),
            "source3" | "source" => Ok(Self::source3()),
            "content23" | "content" => Ok(Self::content23()),
            "selected13" | "selected" => Ok(Self::selected13()),
            list if list.contains(',') || feature_index(list).is_some() => {
                Self::custom(list.split(',').filter(|s| !s.trim().is_empty()))
            }
            other => Err(Error::Unknown {
                kind: "feature config",
                name: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for FeatureConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The label-independent part of an article's features, in registry order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContentRow(pub [f64; N_CONTENT]);

pub fn content_row(article: &NewsArticle, res: &Resources) -> Result<ContentRow> {
    let labels = sentence_labels(&article.body, &res.lexicon, &res.abbreviations);
    let profile = SentimentProfile::from_labels(&labels);
    let seq = SentimentSequenceProfile::from_labels(&labels);
    let domain = ncsl_counts(&article.body, &res.domain_words);
    let flesch = flesch_reading_ease_with(&article.body, &res.abbreviations);
    let surface = surface_counts_with(article, &res.abbreviations);
    let typo = typo_rate(&article.body, &res.dictionary)?;

    let mut row = [0.0; N_CONTENT];
    row[0] = author_count(article) as f64;
    row[1] = profile.p_pos;
    row[2] = profile.p_neu;
    row[3] = profile.p_neg;
    row[4..13].copy_from_slice(&seq.fractions);
    row[13] = domain.fake_only as f64;
    row[14] = domain.true_only as f64;
    row[15] = flesch.score;
    row[16] = surface.n_title_words as f64;
    row[17] = surface.n_chars as f64;
    row[18] = surface.n_special as f64;
    row[19] = surface.n_words as f64;
    row[20] = surface.n_sentences as f64;
    row[21] = surface.n_digits as f64;
    row[22] = typo;
    row[23] = surface.words_per_sentence;
    row[24] = surface.chars_per_word;
    Ok(ContentRow(row))
}

/// Content rows for every article of a corpus, in corpus order.
pub fn content_rows(corpus: &Corpus, res: &Resources, exec: Execution) -> Result<Vec<ContentRow>> {
    exec::map(exec, corpus.articles(), |a| content_row(a, res))
        .into_iter()
        .collect()
}

fn full_row(content: &ContentRow, history: HistoryFeatures) -> [f64; 27] {
    let mut row = [0.0; 27];
    row[..N_CONTENT].copy_from_slice(&content.0);
    row[25] = history.past_fake as f64;
    row[26] = history.past_true as f64;
    row
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub id: String,
    pub names: Vec<String>,
    pub values: Vec<f64>,
}

/// Features of one article. History columns are counted against
/// `reference`, which must not contain the article.
pub fn assemble_features(
    article: &NewsArticle,
    config: &FeatureConfig,
    reference: &HistoryIndex,
    res: &Resources,
) -> Result<FeatureVector> {
    let history = if config.uses_history() {
        reference.features(article)?
    } else {
        HistoryFeatures::default()
    };
    let full = full_row(&content_row(article, res)?, history);
    Ok(FeatureVector {
        id: article.id.clone(),
        names: config.features.clone(),
        values: config.indices().into_iter().map(|i| full[i]).collect(),
    })
}

/// Rows of named real-valued features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub names: Vec<String>,
    pub ids: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FeatureMatrix {
    pub fn new(names: Vec<String>, ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if ids.len() != rows.len() {
            return Err(Error::LengthMismatch(ids.len(), rows.len()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != names.len()) {
            return Err(Error::LengthMismatch(r.len(), names.len()));
        }
        let m = Self { names, ids, rows };
        m.check_finite()?;
        Ok(m)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.names.len()
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.names.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn check_finite(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    feature: self.names[j].clone(),
                    row: i,
                });
            }
        }
        Ok(())
    }

    /// Rows at `idx`, in that order.
    pub fn subset(&self, idx: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            names: self.names.clone(),
            ids: idx.iter().map(|&i| self.ids[i].clone()).collect(),
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// CSV with columns `id,label,<features>`.
    pub fn write_csv<W: Write>(&self, labels: &[Label], w: W) -> Result<()> {
        if labels.len() != self.n_rows() {
            return Err(Error::LengthMismatch(labels.len(), self.n_rows()));
        }
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["id".to_string(), "label".to_string()];
        header.extend(self.names.iter().cloned());
        out.write_record(&header)?;
        for ((id, label), row) in self.ids.iter().zip(labels).zip(&self.rows) {
            let mut rec = vec![id.clone(), label.as_str().to_string()];
            rec.extend(row.iter().map(|v| v.to_string()));
            out.write_record(&rec)?;
        }
        out.flush().map_err(|e| Error::io("<features>", e))
    }
}

/// Builds a matrix for `rows` of the corpus. Reference articles get
/// leave-one-out history; every other article must be absent from
/// `reference`, otherwise [`Error::Leakage`] is returned.
pub fn build_matrix(
    corpus: &Corpus,
    content: &[ContentRow],
    rows: &[usize],
    config: &FeatureConfig,
    reference: &HistoryIndex,
    in_reference: bool,
) -> Result<FeatureMatrix> {
    let cols = config.indices();
    let mut out = Vec::with_capacity(rows.len());
    for &i in rows {
        let article = &corpus.articles()[i];
        let history = if !config.uses_history() {
            HistoryFeatures::default()
        } else if in_reference {
            reference.features_excluding_self(article)
        } else {
            reference.features(article)?
        };
        let full = full_row(&content[i], history);
        out.push(cols.iter().map(|&j| full[j]).collect());
    }
    FeatureMatrix::new(
        config.features.clone(),
        rows.iter()
            .map(|&i| corpus.articles()[i].id.clone())
            .collect(),
        out,
    )
}

/// Whole-corpus matrix with history counted against the rest of the corpus.
/// Labels of other articles leak into each row, so this is for inspection and
/// export only; evaluation rebuilds history inside each fold.
pub fn featurize_corpus(
    corpus: &Corpus,
    config: &FeatureConfig,
    res: &Resources,
    exec: Execution,
) -> Result<FeatureMatrix> {
    let content = content_rows(corpus, res, exec)?;
    let reference = HistoryIndex::new(corpus.articles());
    let all: Vec<usize> = (0..corpus.len()).collect();
    build_matrix(corpus, &content, &all, config, &reference, true)
}
