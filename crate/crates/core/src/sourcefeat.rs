//! Source-credibility signals derived from author lists.
//!
//! Authors are identified by their casefolded normalized name. An author is
//! *eligible* once they appear on at least `min_articles` stories; only
//! eligible authors are typed and placed in the coauthorship graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::Write;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::{author_key, Corpus, Label, NewsArticle};
use crate::error::{Error, Result};

pub const DEFAULT_MIN_ARTICLES: usize = 2;

pub fn author_count(article: &NewsArticle) -> usize {
    article.authors.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuthorType {
    TrueOnly,
    FakeOnly,
    Mixed,
    Insufficient,
}

impl AuthorType {
    /// Depends only on the multiset of labels.
    pub fn from_labels(labels: &[Label], min_articles: usize) -> Self {
        if labels.len() < min_articles.max(1) {
            return AuthorType::Insufficient;
        }
        let fake = labels.contains(&Label::Fake);
        let real = labels.contains(&Label::True);
        match (fake, real) {
            (true, true) => AuthorType::Mixed,
            (true, false) => AuthorType::FakeOnly,
            _ => AuthorType::TrueOnly,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AuthorType::TrueOnly => "true_only",
            AuthorType::FakeOnly => "fake_only",
            AuthorType::Mixed => "mixed",
            AuthorType::Insufficient => "insufficient",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorEntry {
    /// First display form seen.
    pub display: String,
    /// Article ids ordered by publish date (undated last), then id.
    pub articles: Vec<String>,
    pub labels: Vec<Label>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AuthorIndex {
    authors: BTreeMap<String, AuthorEntry>,
    article_authors: BTreeMap<String, Vec<String>>,
}

impl AuthorIndex {
    pub fn get(&self, key: &str) -> Option<&AuthorEntry> {
        self.authors.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &AuthorEntry)> {
        self.authors.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn n_unique_authors(&self) -> usize {
        self.authors.len()
    }

    pub fn n_eligible(&self, min_articles: usize) -> usize {
        self.authors
            .values()
            .filter(|e| e.articles.len() >= min_articles)
            .count()
    }

    /// Author keys of an article, in list order.
    pub fn authors_of(&self, article_id: &str) -> &[String] {
        self.article_authors
            .get(article_id)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn author_type(&self, key: &str, min_articles: usize) -> AuthorType {
        self.authors
            .get(key)
            .map(|e| AuthorType::from_labels(&e.labels, min_articles))
            .unwrap_or(AuthorType::Insufficient)
    }
}

pub fn build_author_index(corpus: &Corpus) -> AuthorIndex {
    let mut order: Vec<&NewsArticle> = corpus.articles().iter().collect();
    order.sort_by(|a, b| date_order(a.publish_date, b.publish_date).then_with(|| a.id.cmp(&b.id)));
    let mut index = AuthorIndex::default();
    for a in order {
        let keys: Vec<String> = a.author_keys().collect();
        for (key, display) in keys.iter().zip(&a.authors) {
            let entry = index
                .authors
                .entry(key.clone())
                .or_insert_with(|| AuthorEntry {
                    display: display.clone(),
                    articles: Vec::new(),
                    labels: Vec::new(),
                });
            entry.articles.push(a.id.clone());
            entry.labels.push(a.label);
        }
        index.article_authors.insert(a.id.clone(), keys);
    }
    index
}

fn date_order(a: Option<NaiveDate>, b: Option<NaiveDate>) -> std::cmp::Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorNode {
    pub display: String,
    pub author_type: AuthorType,
    pub n_articles: usize,
}

/// Coauthorship among eligible authors; edge weight counts shared articles.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoauthorGraph {
    pub nodes: BTreeMap<String, AuthorNode>,
    /// Keyed by `(a, b)` with `a < b`.
    pub edges: BTreeMap<(String, String), usize>,
}

impl CoauthorGraph {
    pub fn mixed_fraction(&self) -> f64 {
        if self.nodes.is_empty() {
            return 0.0;
        }
        let mixed = self
            .nodes
            .values()
            .filter(|n| n.author_type == AuthorType::Mixed)
            .count();
        mixed as f64 / self.nodes.len() as f64
    }

    pub fn neighbors<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.keys().filter_map(move |(a, b)| {
            if a == key {
                Some(b.as_str())
            } else if b == key {
                Some(a.as_str())
            } else {
                None
            }
        })
    }

    pub fn type_counts(&self) -> BTreeMap<AuthorType, usize> {
        let mut counts = BTreeMap::new();
        for n in self.nodes.values() {
            *counts.entry(n.author_type).or_default() += 1;
        }
        counts
    }

    /// `author_a,author_b,weight`, display names.
    pub fn write_edges_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["author_a", "author_b", "weight"])?;
        for ((a, b), weight) in &self.edges {
            out.write_record([
                &self.nodes[a].display,
                &self.nodes[b].display,
                &weight.to_string(),
            ])?;
        }
        out.flush().map_err(|e| Error::io("<edges>", e))
    }

    /// `author,type,n_articles`.
    pub fn write_nodes_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["author", "type", "n_articles"])?;
        for node in self.nodes.values() {
            out.write_record([
                node.display.as_str(),
                node.author_type.as_str(),
                &node.n_articles.to_string(),
            ])?;
        }
        out.flush().map_err(|e| Error::io("<nodes>", e))
    }
}

pub fn build_coauthor_graph(index: &AuthorIndex, min_articles: usize) -> CoauthorGraph {
    let mut graph = CoauthorGraph::default();
    for (key, entry) in index.iter() {
        if entry.articles.len() >= min_articles {
            graph.nodes.insert(
                key.to_string(),
                AuthorNode {
                    display: entry.display.clone(),
                    author_type: AuthorType::from_labels(&entry.labels, min_articles),
                    n_articles: entry.articles.len(),
                },
            );
        }
    }
    for keys in index.article_authors.values() {
        let eligible: BTreeSet<&String> = keys
            .iter()
            .filter(|k| graph.nodes.contains_key(*k))
            .collect();
        let eligible: Vec<&String> = eligible.into_iter().collect();
        for (i, a) in eligible.iter().enumerate() {
            for b in &eligible[i + 1..] {
                *graph.edges.entry(((*a).clone(), (*b).clone())).or_default() += 1;
            }
        }
    }
    graph
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborProfile {
    pub n_true_only: usize,
    pub n_fake_only: usize,
    pub n_mixed: usize,
}

/// Per author, how many neighbors are of each type.
pub fn neighbor_type_profile(graph: &CoauthorGraph) -> BTreeMap<String, NeighborProfile> {
    let mut profiles: BTreeMap<String, NeighborProfile> = graph
        .nodes
        .keys()
        .map(|k| (k.clone(), NeighborProfile::default()))
        .collect();
    for (a, b) in graph.edges.keys() {
        for (me, other) in [(a, b), (b, a)] {
            let p = profiles.get_mut(me).expect("edge endpoints are nodes");
            match graph.nodes[other].author_type {
                AuthorType::TrueOnly => p.n_true_only += 1,
                AuthorType::FakeOnly => p.n_fake_only += 1,
                AuthorType::Mixed => p.n_mixed += 1,
                AuthorType::Insufficient => {}
            }
        }
    }
    profiles
}

/// `author,n_true_only,n_fake_only,n_mixed`.
pub fn write_profile_csv<W: Write>(
    graph: &CoauthorGraph,
    profiles: &BTreeMap<String, NeighborProfile>,
    w: W,
) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["author", "n_true_only", "n_fake_only", "n_mixed"])?;
    for (key, p) in profiles {
        out.write_record([
            graph.nodes[key].display.clone(),
            p.n_true_only.to_string(),
            p.n_fake_only.to_string(),
            p.n_mixed.to_string(),
        ])?;
    }
    out.flush().map_err(|e| Error::io("<profile>", e))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryFeatures {
    pub past_fake: usize,
    pub past_true: usize,
}

/// Reference articles grouped by author, for repeated history lookups.
#[derive(Debug, Clone, Default)]
pub struct HistoryIndex {
    by_author: HashMap<String, Vec<(String, Label)>>,
    ids: HashSet<String>,
}

impl HistoryIndex {
    pub fn new<'a>(reference: impl IntoIterator<Item = &'a NewsArticle>) -> Self {
        let mut index = HistoryIndex::default();
        for a in reference {
            index.ids.insert(a.id.clone());
            for key in a.author_keys() {
                index
                    .by_author
                    .entry(key)
                    .or_default()
                    .push((a.id.clone(), a.label));
            }
        }
        index
    }

    pub fn contains(&self, id: &str) -> bool {
        self.ids.contains(id)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// History of an article outside the reference set. Fails with
    /// [`Error::Leakage`] if the article is itself a reference article.
    pub fn features(&self, article: &NewsArticle) -> Result<HistoryFeatures> {
        if self.contains(&article.id) {
            return Err(Error::Leakage(article.id.clone()));
        }
        Ok(self.count(article, None))
    }

    /// History of a reference article against the reference set minus itself.
    pub fn features_excluding_self(&self, article: &NewsArticle) -> HistoryFeatures {
        self.count(article, Some(&article.id))
    }

    fn count(&self, article: &NewsArticle, skip: Option<&str>) -> HistoryFeatures {
        let mut seen: HashMap<&str, Label> = HashMap::new();
        for key in article.author_keys() {
            for (id, label) in self.by_author.get(&key).into_iter().flatten() {
                if Some(id.as_str()) != skip {
                    seen.insert(id, *label);
                }
            }
        }
        let past_fake = seen.values().filter(|&&l| l == Label::Fake).count();
        HistoryFeatures {
            past_fake,
            past_true: seen.len() - past_fake,
        }
    }
}

/// Counts reference articles that share at least one author with `article`.
pub fn history_features<'a>(
    article: &NewsArticle,
    reference: impl IntoIterator<Item = &'a NewsArticle>,
) -> Result<HistoryFeatures> {
    HistoryIndex::new(reference).features(article)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorTimeline {
    pub author: String,
    pub article_ids: Vec<String>,
    pub labels: Vec<Label>,
    /// Positions `i` where `labels[i] != labels[i - 1]`.
    pub flips: Vec<usize>,
}

impl AuthorTimeline {
    pub fn contradicts(&self) -> bool {
        !self.flips.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub n_dated_articles: usize,
    pub n_eligible_authors: usize,
    pub n_consistent: usize,
    pub n_contradicting: usize,
    pub authors: Vec<AuthorTimeline>,
}

/// Chronological label consistency of authors over dated articles.
pub fn consistency_report(corpus: &Corpus, min_articles: usize) -> ConsistencyReport {
    let dated = corpus.filter(|a| a.publish_date.is_some());
    let index = build_author_index(&dated);
    let mut report = ConsistencyReport {
        n_dated_articles: dated.len(),
        ..Default::default()
    };
    for (_, entry) in index.iter() {
        if entry.articles.len() < min_articles {
            continue;
        }
        let flips = (1..entry.labels.len())
            .filter(|&i| entry.labels[i] != entry.labels[i - 1])
            .collect::<Vec<_>>();
        let timeline = AuthorTimeline {
            author: entry.display.clone(),
            article_ids: entry.articles.clone(),
            labels: entry.labels.clone(),
            flips,
        };
        if timeline.contradicts() {
            report.n_contradicting += 1;
        } else {
            report.n_consistent += 1;
        }
        report.authors.push(timeline);
    }
    report.n_eligible_authors = report.authors.len();
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakdownRow {
    pub label: Label,
    pub multiple_authors: bool,
    /// `mixed` if any eligible author is mixed, else the exclusive type.
    pub author_type: AuthorType,
    pub n_articles: usize,
}

/// Articles with at least one eligible author, split by label, single vs
/// multiple authors, and the type of their eligible authors.
pub fn coauthor_breakdown(corpus: &Corpus, graph: &CoauthorGraph) -> Vec<BreakdownRow> {
    let mut counts: BTreeMap<(Label, bool, AuthorType), usize> = BTreeMap::new();
    for a in corpus.articles() {
        let types: Vec<AuthorType> = a
            .author_keys()
            .filter_map(|k| graph.nodes.get(&k).map(|n| n.author_type))
            .collect();
        if types.is_empty() {
            continue;
        }
        let ty = if types.contains(&AuthorType::Mixed) {
            AuthorType::Mixed
        } else {
            types[0]
        };
        *counts
            .entry((a.label, a.authors.len() > 1, ty))
            .or_default() += 1;
    }
    counts
        .into_iter()
        .map(
            |((label, multiple_authors, author_type), n_articles)| BreakdownRow {
                label,
                multiple_authors,
                author_type,
                n_articles,
            },
        )
        .collect()
}

pub const DEFAULT_ORGANIZATIONS: &[&str] = &[
    "abc news",
    "associated press",
    "politico",
    "cnn",
    "reuters",
    "nbc",
    "cbs",
    "fox news",
    "washington post",
    "new york times",
    "bloomberg",
    "npr",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffiliationRow {
    pub organization: String,
    pub fake: usize,
    #[serde(rename = "true")]
    pub real: usize,
}

/// Articles whose author strings mention each organization, by label.
/// Reported only; these are not classifier features.
pub fn affiliation_report(corpus: &Corpus, organizations: &[&str]) -> Vec<AffiliationRow> {
    organizations
        .iter()
        .map(|org| {
            let mut row = AffiliationRow {
                organization: org.to_string(),
                fake: 0,
                real: 0,
            };
            for a in corpus.articles() {
                if a.authors.iter().any(|name| author_key(name).contains(org)) {
                    match a.label {
                        Label::Fake => row.fake += 1,
                        Label::True => row.real += 1,
                    }
                }
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Dataset;
    use proptest::prelude::*;

    fn art(id: &str, label: Label, authors: &[&str]) -> NewsArticle {
        NewsArticle::new(id, Dataset::Other, label, "", id, authors.iter().copied())
    }

    fn dated(id: &str, label: Label, authors: &[&str], day: u32) -> NewsArticle {
        art(id, label, authors).with_date(NaiveDate::from_ymd_opt(2016, 1, day).unwrap())
    }

    #[test]
    fn counts_authors() {
        assert_eq!(author_count(&art("a", Label::Fake, &[])), 0);
        assert_eq!(author_count(&art("a", Label::Fake, &["A", "B"])), 2);
    }

    #[test]
    fn index_counts_unique_and_eligible() {
        let c = Corpus::new(vec![
            art("1", Label::Fake, &["Ann"]),
            art("2", Label::Fake, &["ann", "Bob"]),
            art("3", Label::True, &["ANN"]),
        ])
        .unwrap();
        let idx = build_author_index(&c);
        assert_eq!(idx.n_unique_authors(), 2);
        assert_eq!(idx.n_eligible(2), 1);
        assert_eq!(idx.get("ann").unwrap().articles.len(), 3);
        assert_eq!(idx.get("ann").unwrap().display, "Ann");
        assert_eq!(build_author_index(&Corpus::default()).n_unique_authors(), 0);
    }

    #[test]
    fn graph_weights_and_isolates() {
        let c = Corpus::new(vec![
            art("1", Label::True, &["A", "B"]),
            art("2", Label::True, &["A", "B"]),
            art("3", Label::Fake, &["C", "D"]),
            art("4", Label::True, &["C"]),
        ])
        .unwrap();
        let g = build_coauthor_graph(&build_author_index(&c), 2);
        assert_eq!(g.nodes.len(), 3);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[&("a".to_string(), "b".to_string())], 2);
        assert_eq!(g.nodes["c"].author_type, AuthorType::Mixed);
        assert_eq!(g.neighbors("c").count(), 0);
        assert!((g.mixed_fraction() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn neighbor_profiles() {
        let c = Corpus::new(vec![
            art("1", Label::Fake, &["X", "F1", "F2"]),
            art("2", Label::Fake, &["X", "F1", "F2"]),
            art("3", Label::True, &["T1", "T2", "T3"]),
            art("4", Label::True, &["T1", "T2", "T3"]),
            art("5", Label::True, &["Solo"]),
            art("6", Label::True, &["Solo"]),
        ])
        .unwrap();
        let g = build_coauthor_graph(&build_author_index(&c), 2);
        let p = neighbor_type_profile(&g);
        assert_eq!(
            p["x"],
            NeighborProfile {
                n_true_only: 0,
                n_fake_only: 2,
                n_mixed: 0
            }
        );
        assert_eq!(p["solo"], NeighborProfile::default());
        for t in ["t1", "t2", "t3"] {
            assert_eq!(
                p[t],
                NeighborProfile {
                    n_true_only: 2,
                    n_fake_only: 0,
                    n_mixed: 0
                }
            );
        }
    }

    #[test]
    fn history_examples() {
        let target = art("t", Label::True, &["Ann"]);
        let reference = vec![
            art("r1", Label::Fake, &["Ann"]),
            art("r2", Label::Fake, &["Ann", "Bob"]),
            art("r3", Label::True, &["Bob"]),
        ];
        assert_eq!(
            history_features(&target, &reference).unwrap(),
            HistoryFeatures {
                past_fake: 2,
                past_true: 0
            }
        );
        let unknown = art("u", Label::Fake, &["Zed"]);
        assert_eq!(
            history_features(&unknown, &reference).unwrap(),
            HistoryFeatures::default()
        );
        let nobody = art("n", Label::Fake, &[]);
        assert_eq!(
            history_features(&nobody, &reference).unwrap(),
            HistoryFeatures::default()
        );
    }

    #[test]
    fn history_counts_articles_not_authorships() {
        let target = art("t", Label::True, &["Ann", "Bob"]);
        let reference = vec![art("r", Label::Fake, &["Ann", "Bob"])];
        assert_eq!(history_features(&target, &reference).unwrap().past_fake, 1);
    }

    #[test]
    fn leakage_is_an_error() {
        let target = art("t", Label::True, &["Ann"]);
        let reference = vec![target.clone(), art("r", Label::Fake, &["Ann"])];
        assert!(
            matches!(history_features(&target, &reference), Err(Error::Leakage(id)) if id == "t")
        );
        let idx = HistoryIndex::new(&reference);
        assert_eq!(
            idx.features_excluding_self(&target),
            HistoryFeatures {
                past_fake: 1,
                past_true: 0
            }
        );
    }

    #[test]
    fn consistency_examples() {
        let c = Corpus::new(vec![
            dated("1", Label::True, &["Steady"], 1),
            dated("2", Label::True, &["Steady"], 2),
            dated("3", Label::True, &["Steady"], 3),
            dated("4", Label::Fake, &["Flip"], 1),
            dated("5", Label::True, &["Flip"], 2),
            art("6", Label::Fake, &["Steady"]),
        ])
        .unwrap();
        let r = consistency_report(&c, 2);
        assert_eq!(r.n_dated_articles, 5);
        assert_eq!(r.n_eligible_authors, 2);
        assert_eq!(r.n_contradicting, 1);
        assert_eq!(r.n_consistent, 1);
        let flip = r.authors.iter().find(|t| t.author == "Flip").unwrap();
        assert_eq!(flip.flips, vec![1]);
    }

    #[test]
    fn same_day_ties_break_by_id() {
        let c = Corpus::new(vec![
            dated("b", Label::True, &["A"], 1),
            dated("a", Label::Fake, &["A"], 1),
        ])
        .unwrap();
        let r = consistency_report(&c, 2);
        assert_eq!(r.authors[0].article_ids, vec!["a", "b"]);
    }

    #[test]
    fn breakdown_rows() {
        let c = Corpus::new(vec![
            art("1", Label::True, &["A"]),
            art("2", Label::True, &["A", "Z"]),
            art("3", Label::Fake, &["M"]),
            art("4", Label::True, &["M"]),
            art("5", Label::Fake, &["Q"]),
        ])
        .unwrap();
        let g = build_coauthor_graph(&build_author_index(&c), 2);
        let rows = coauthor_breakdown(&c, &g);
        assert_eq!(rows.iter().map(|r| r.n_articles).sum::<usize>(), 4);
        assert!(rows.contains(&BreakdownRow {
            label: Label::True,
            multiple_authors: true,
            author_type: AuthorType::TrueOnly,
            n_articles: 1
        }));
    }

    #[test]
    fn affiliations_detected() {
        let c = Corpus::new(vec![
            art("1", Label::True, &["Jane Roe, Associated Press"]),
            art("2", Label::Fake, &["Fed up"]),
        ])
        .unwrap();
        let rows = affiliation_report(&c, &["associated press"]);
        assert_eq!(rows[0].real, 1);
        assert_eq!(rows[0].fake, 0);
    }

    #[test]
    fn csv_exports() {
        let c = Corpus::new(vec![
            art("1", Label::True, &["A", "B"]),
            art("2", Label::True, &["A", "B"]),
        ])
        .unwrap();
        let g = build_coauthor_graph(&build_author_index(&c), 2);
        let mut buf = Vec::new();
        g.write_edges_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "author_a,author_b,weight\nA,B,2\n"
        );
        let mut buf = Vec::new();
        write_profile_csv(&g, &neighbor_type_profile(&g), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "author,n_true_only,n_fake_only,n_mixed\nA,1,0,0\nB,1,0,0\n"
        );
    }

    fn arb_corpus() -> impl Strategy<Value = Vec<NewsArticle>> {
        prop::collection::vec(
            (
                prop::bool::ANY,
                prop::collection::vec(0u8..6, 0..4),
                prop::option::of(1u32..28),
            ),
            0..25,
        )
        .prop_map(|rows| {
            rows.into_iter()
                .enumerate()
                .map(|(i, (fake, authors, day))| {
                    let names: Vec<String> = authors.iter().map(|a| format!("author{a}")).collect();
                    let label = if fake { Label::Fake } else { Label::True };
                    let mut a =
                        NewsArticle::new(format!("{i:03}"), Dataset::Other, label, "", "", names);
                    a.publish_date = day.map(|d| NaiveDate::from_ymd_opt(2016, 2, d).unwrap());
                    a
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn author_type_ignores_order(mut labels in prop::collection::vec(prop::bool::ANY, 0..8)) {
            let to = |v: &[bool]| v.iter().map(|&f| if f { Label::Fake } else { Label::True }).collect::<Vec<_>>();
            let t = AuthorType::from_labels(&to(&labels), 2);
            labels.reverse();
            prop_assert_eq!(t, AuthorType::from_labels(&to(&labels), 2));
        }

        #[test]
        fn neighbor_totals_match_typed_edge_endpoints(arts in arb_corpus()) {
            let c = Corpus::new(arts).unwrap();
            let g = build_coauthor_graph(&build_author_index(&c), 2);
            let p = neighbor_type_profile(&g);
            for ty in [AuthorType::TrueOnly, AuthorType::FakeOnly, AuthorType::Mixed] {
                let from_profiles: usize = p.values().map(|x| match ty {
                    AuthorType::TrueOnly => x.n_true_only,
                    AuthorType::FakeOnly => x.n_fake_only,
                    _ => x.n_mixed,
                }).sum();
                // each edge contributes one count per endpoint of type `ty`
                let endpoints: usize = g.edges.keys()
                    .map(|(a, b)| [a, b].iter().filter(|k| g.nodes[**k].author_type == ty).count())
                    .sum();
                prop_assert_eq!(from_profiles, endpoints);
            }
        }

        #[test]
        fn history_monotone_in_fake_reference(arts in arb_corpus()) {
            let target = art("target", Label::True, &["author1"]);
            let before = history_features(&target, &arts).unwrap();
            let mut more = arts.clone();
            more.push(art("extra", Label::Fake, &["author1"]));
            let after = history_features(&target, &more).unwrap();
            prop_assert!(after.past_fake > before.past_fake);
        }

        #[test]
        fn single_label_corpus_is_consistent(arts in arb_corpus()) {
            let arts: Vec<_> = arts.into_iter().map(|mut a| { a.label = Label::Fake; a }).collect();
            let r = consistency_report(&Corpus::new(arts).unwrap(), 2);
            prop_assert_eq!(r.n_contradicting, 0);
        }
    }
}
