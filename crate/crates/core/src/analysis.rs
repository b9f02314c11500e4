//! Corpus-level analysis: fake-vs-true comparisons for every registry
//! feature, author statistics, coauthorship structure and author
//! consistency.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{corpus_stats, Corpus, CorpusStats};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::ml::features::{featurize_corpus, FeatureConfig};
use crate::resources::Resources;
use crate::sourcefeat::{
    affiliation_report, build_author_index, build_coauthor_graph, coauthor_breakdown,
    consistency_report, AffiliationRow, AuthorType, BreakdownRow, CoauthorGraph, ConsistencyReport,
    DEFAULT_ORGANIZATIONS,
};
use crate::stats::{compare_groups, GroupComparison, StatTestResult};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CoauthorSummary {
    pub n_unique_authors: usize,
    pub n_eligible: usize,
    pub n_edges: usize,
    pub mixed_fraction: f64,
    pub type_counts: BTreeMap<AuthorType, usize>,
}

/// Every section is optional so that partial or empty documents still load.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisReport {
    pub corpus: Option<CorpusStats>,
    /// Pearson correlation of the label (true = 1) with the author count.
    pub author_correlation: Option<StatTestResult>,
    /// Keyed by registry feature name.
    pub features: BTreeMap<String, GroupComparison>,
    pub coauthor: Option<CoauthorSummary>,
    pub consistency: Option<ConsistencyReport>,
    pub breakdown: Vec<BreakdownRow>,
    pub affiliation: Vec<AffiliationRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Articles an author needs before being typed.
    pub min_articles: usize,
    pub exec: Execution,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            min_articles: crate::sourcefeat::DEFAULT_MIN_ARTICLES,
            exec: Execution::default(),
        }
    }
}

/// Full analysis. History columns use leave-one-out counts over the whole
/// corpus. Also returns the coauthorship graph for export.
pub fn analyze(
    corpus: &Corpus,
    res: &Resources,
    opts: AnalysisOptions,
) -> Result<(AnalysisReport, CoauthorGraph)> {
    let labels = corpus.labels();
    let matrix = featurize_corpus(corpus, &FeatureConfig::all26(), res, opts.exec)?;
    let comparisons = exec::map(opts.exec, &matrix.names, |name| {
        let column = matrix.column(name).expect("column from own names");
        compare_groups(name, &column, &labels)
    });
    let mut features = BTreeMap::new();
    for c in comparisons {
        let c = c?;
        features.insert(c.feature.clone(), c);
    }

    let n_authors = matrix.column("n_authors").expect("registry feature");
    let indicator: Vec<f64> = labels.iter().map(|l| l.indicator()).collect();
    let author_correlation = StatTestResult::pearson(&indicator, &n_authors).ok();

    let index = build_author_index(corpus);
    let graph = build_coauthor_graph(&index, opts.min_articles);
    let coauthor = CoauthorSummary {
        n_unique_authors: index.n_unique_authors(),
        n_eligible: index.n_eligible(opts.min_articles),
        n_edges: graph.edges.len(),
        mixed_fraction: graph.mixed_fraction(),
        type_counts: graph.type_counts(),
    };

    let report = AnalysisReport {
        corpus: Some(corpus_stats(corpus)),
        author_correlation,
        features,
        coauthor: Some(coauthor),
        consistency: Some(consistency_report(corpus, opts.min_articles)),
        breakdown: coauthor_breakdown(corpus, &graph),
        affiliation: affiliation_report(corpus, DEFAULT_ORGANIZATIONS),
    };
    Ok((report, graph))
}
