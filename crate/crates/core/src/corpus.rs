//! News corpora: loading, normalization, deduplication and descriptive counts.
//!
//! Three on-disk forms are understood:
//!
//! * [`InputFormat::JsonDir`]: one JSON object per story, laid out as
//!   `<dataset>/<fake|real>/<id>.json` (FakeNewsNet style; the older
//!   `FakeNewsContent` / `RealNewsContent` directory names are accepted too).
//! * [`InputFormat::Csv`]: a consolidated table with columns
//!   `id,dataset,label,title,text,authors,url,publish_date`, authors `;`-separated.
//! * [`InputFormat::Corpus`]: the persisted form written by [`save_corpus`], a
//!   JSON array of [`NewsArticle`] objects.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use chrono::{DateTime, NaiveDate};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dataset {
    Politifact,
    Buzzfeed,
    Other,
}

impl Dataset {
    /// Infers the dataset from a directory or column value, case-insensitively.
    pub fn infer(name: &str) -> Self {
        let lower = name.to_lowercase();
        if lower.contains("politifact") {
            Dataset::Politifact
        } else if lower.contains("buzzfeed") {
            Dataset::Buzzfeed
        } else {
            Dataset::Other
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Dataset::Politifact => "politifact",
            Dataset::Buzzfeed => "buzzfeed",
            Dataset::Other => "other",
        }
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Dataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "politifact" => Ok(Dataset::Politifact),
            "buzzfeed" => Ok(Dataset::Buzzfeed),
            "other" => Ok(Dataset::Other),
            other => Err(Error::Unknown {
                kind: "dataset",
                name: other.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Fake,
    True,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Fake, Label::True];

    /// Numeric coding used for correlations: true = 1, fake = 0.
    pub fn indicator(self) -> f64 {
        match self {
            Label::Fake => 0.0,
            Label::True => 1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Label::Fake => Label::True,
            Label::True => Label::Fake,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Fake => "fake",
            Label::True => "true",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "fake" => Ok(Label::Fake),
            "true" | "real" => Ok(Label::True),
            other => Err(Error::Unknown {
                kind: "label",
                name: other.to_string(),
            }),
        }
    }
}

/// One labeled story.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewsArticle {
    pub id: String,
    pub dataset: Dataset,
    pub label: Label,
    pub title: String,
    pub body: String,
    pub authors: Vec<String>,
    pub url: Option<String>,
    pub publish_date: Option<NaiveDate>,
}

impl NewsArticle {
    /// Builds an article, normalizing the author list.
    pub fn new(
        id: impl Into<String>,
        dataset: Dataset,
        label: Label,
        title: impl Into<String>,
        body: impl Into<String>,
        authors: impl IntoIterator<Item = impl AsRef<str>>,
    ) -> Self {
        NewsArticle {
            id: id.into(),
            dataset,
            label,
            title: title.into(),
            body: body.into(),
            authors: normalize_authors(authors),
            url: None,
            publish_date: None,
        }
    }

    pub fn with_url(mut self, url: impl Into<String>) -> Self {
        self.url = Some(url.into());
        self
    }

    pub fn with_date(mut self, date: NaiveDate) -> Self {
        self.publish_date = Some(date);
        self
    }

    /// Casefolded author identities, in list order.
    pub fn author_keys(&self) -> impl Iterator<Item = String> + '_ {
        self.authors.iter().map(|a| author_key(a))
    }
}

/// Trims and collapses internal whitespace, preserving the display form.
pub fn normalize_author(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Identity key for an author name: normalized then casefolded.
pub fn author_key(name: &str) -> String {
    normalize_author(name).to_lowercase()
}

/// Normalizes every name, dropping empties and identity duplicates (first
/// display form wins).
pub fn normalize_authors(names: impl IntoIterator<Item = impl AsRef<str>>) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for name in names {
        let display = normalize_author(name.as_ref());
        if display.is_empty() {
            continue;
        }
        if seen.insert(display.to_lowercase()) {
            out.push(display);
        }
    }
    out
}

/// Body text as compared for duplicate detection: NFC, then trimmed.
pub fn normalized_body(body: &str) -> String {
    body.nfc().collect::<String>().trim().to_string()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub sources: Vec<PathBuf>,
    /// Seconds since the Unix epoch at load time.
    pub loaded_at: u64,
}

impl Provenance {
    fn now(sources: Vec<PathBuf>) -> Self {
        let loaded_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Provenance { sources, loaded_at }
    }
}

/// An immutable collection of articles with unique ids.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    articles: Vec<NewsArticle>,
    provenance: Provenance,
}

impl Corpus {
    /// Builds a corpus, rejecting duplicate ids.
    pub fn new(articles: Vec<NewsArticle>) -> Result<Self> {
        Self::with_provenance(articles, Provenance::default())
    }

    pub fn with_provenance(articles: Vec<NewsArticle>, provenance: Provenance) -> Result<Self> {
        let mut ids = HashSet::with_capacity(articles.len());
        for a in &articles {
            if !ids.insert(a.id.as_str()) {
                return Err(Error::DuplicateId(a.id.clone()));
            }
        }
        Ok(Corpus {
            articles,
            provenance,
        })
    }

    pub fn articles(&self) -> &[NewsArticle] {
        &self.articles
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.articles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.articles.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&NewsArticle> {
        self.articles.iter().find(|a| a.id == id)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.articles.iter().map(|a| a.label).collect()
    }

    /// Keeps only the articles satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&NewsArticle) -> bool) -> Corpus {
        Corpus {
            articles: self.articles.iter().filter(|a| keep(a)).cloned().collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn into_articles(self) -> Vec<NewsArticle> {
        self.articles
    }
}

impl PartialEq for Corpus {
    fn eq(&self, other: &Self) -> bool {
        self.articles == other.articles
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    JsonDir,
    Csv,
    Corpus,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json-dir" | "json_dir" | "fakenewsnet" => Ok(InputFormat::JsonDir),
            "csv" => Ok(InputFormat::Csv),
            "corpus" | "json" => Ok(InputFormat::Corpus),
            other => Err(Error::Unknown {
                kind: "input format",
                name: other.to_string(),
            }),
        }
    }
}

/// Loads and concatenates every path in the declared format.
pub fn load_corpus<P: AsRef<Path>>(paths: &[P], format: InputFormat) -> Result<Corpus> {
    let mut articles = Vec::new();
    for path in paths {
        let path = path.as_ref();
        if !path.exists() {
            return Err(Error::io(
                path,
                std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or directory"),
            ));
        }
        match format {
            InputFormat::JsonDir => load_json_tree(path, &mut articles)?,
            InputFormat::Csv => load_csv(path, &mut articles)?,
            InputFormat::Corpus => load_persisted(path, &mut articles)?,
        }
    }
    let sources = paths.iter().map(|p| p.as_ref().to_path_buf()).collect();
    Corpus::with_provenance(articles, Provenance::now(sources))
}

/// Writes the persisted JSON form.
pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(corpus.articles())?;
    fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
}

fn load_persisted(path: &Path, out: &mut Vec<NewsArticle>) -> Result<()> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let parsed: Vec<NewsArticle> = serde_json::from_str(&text)?;
    out.extend(parsed.into_iter().map(|mut a| {
        a.authors = normalize_authors(&a.authors);
        a
    }));
    Ok(())
}

fn label_dir(name: &str) -> Option<Label> {
    let lower = name.to_lowercase();
    if lower == "fake" || lower.starts_with("fakenews") {
        Some(Label::Fake)
    } else if lower == "real" || lower == "true" || lower.starts_with("realnews") {
        Some(Label::True)
    } else {
        None
    }
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(dir, err)))
        .collect::<Result<Vec<_>>>()?;
    entries.sort();
    Ok(entries)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Accepts either a dataset directory (holding label subdirectories) or a root
/// whose subdirectories are dataset directories.
fn load_json_tree(path: &Path, out: &mut Vec<NewsArticle>) -> Result<()> {
    let entries = sorted_entries(path)?;
    let label_dirs: Vec<_> = entries
        .iter()
        .filter(|p| p.is_dir())
        .filter_map(|p| label_dir(&file_name(p)).map(|l| (p.clone(), l)))
        .collect();
    if label_dirs.is_empty() {
        for sub in entries.iter().filter(|p| p.is_dir()) {
            load_json_tree(sub, out)?;
        }
        return Ok(());
    }
    let dataset = Dataset::infer(&file_name(path));
    for (dir, label) in label_dirs {
        for file in sorted_entries(&dir)? {
            if file.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let id = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::parse(&id, "<document>", e.to_string()))?;
            out.push(article_from_json(&id, dataset, label, &value)?);
        }
    }
    Ok(())
}

fn opt_string(
    id: &str,
    obj: &serde_json::Map<String, Value>,
    field: &str,
) -> Result<Option<String>> {
    match obj.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(other) => Err(Error::parse(
            id,
            field,
            format!("expected string, found {}", json_kind(other)),
        )),
    }
}

fn json_kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// Parses one FakeNewsNet-style record.
pub fn article_from_json(
    id: &str,
    dataset: Dataset,
    label: Label,
    value: &Value,
) -> Result<NewsArticle> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse(id, "<document>", "expected a JSON object"))?;
    let title = opt_string(id, obj, "title")?.unwrap_or_default();
    let body = opt_string(id, obj, "text")?.ok_or_else(|| Error::parse(id, "text", "missing"))?;
    let authors = match obj.get("authors") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str().map(str::to_string).ok_or_else(|| {
                    Error::parse(
                        id,
                        "authors",
                        format!("expected string, found {}", json_kind(v)),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Some(other) => {
            return Err(Error::parse(
                id,
                "authors",
                format!("expected array, found {}", json_kind(other)),
            ))
        }
    };
    let url = opt_string(id, obj, "url")?.filter(|u| !u.trim().is_empty());
    let publish_date = match obj.get("publish_date") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_date_value(v).map_err(|m| Error::parse(id, "publish_date", m))?),
    };
    Ok(NewsArticle {
        id: id.to_string(),
        dataset,
        label,
        title,
        body,
        authors: normalize_authors(authors),
        url,
        publish_date,
    })
}

fn parse_date_value(v: &Value) -> std::result::Result<NaiveDate, String> {
    match v {
        Value::String(s) => parse_date(s),
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| "not a finite number".to_string())
            .and_then(epoch_to_date),
        // MongoDB extended JSON as found in some FakeNewsNet dumps.
        Value::Object(o) => match o.get("$date") {
            Some(inner) => parse_date_value(inner),
            None => Err("object without `$date`".to_string()),
        },
        other => Err(format!("expected date, found {}", json_kind(other))),
    }
}

fn epoch_to_date(raw: f64) -> std::result::Result<NaiveDate, String> {
    // Values this large are milliseconds.
    let secs = if raw.abs() > 1e11 { raw / 1000.0 } else { raw };
    DateTime::from_timestamp(secs.floor() as i64, 0)
        .map(|dt| dt.date_naive())
        .ok_or_else(|| format!("timestamp {raw} out of range"))
}

/// Parses an ISO-8601 calendar date, optionally followed by a time part.
pub fn parse_date(s: &str) -> std::result::Result<NaiveDate, String> {
    let s = s.trim();
    if let Ok(d) = NaiveDate::parse_from_str(s, "%Y-%m-%d") {
        return Ok(d);
    }
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Ok(dt.date_naive());
    }
    match s
        .get(..10)
        .map(|p| NaiveDate::parse_from_str(p, "%Y-%m-%d"))
    {
        Some(Ok(d)) if matches!(s.as_bytes().get(10), Some(b'T') | Some(b' ')) => Ok(d),
        _ => Err(format!("`{s}` is not an ISO-8601 date")),
    }
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    id: String,
    dataset: String,
    label: String,
    #[serde(default)]
    title: String,
    text: String,
    #[serde(default)]
    authors: String,
    #[serde(default)]
    url: String,
    #[serde(default)]
    publish_date: String,
}

fn load_csv(path: &Path, out: &mut Vec<NewsArticle>) -> Result<()> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    for (line, row) in reader.deserialize::<CsvRow>().enumerate() {
        let row =
            row.map_err(|e| Error::parse(format!("row {}", line + 1), "<row>", e.to_string()))?;
        let label = row
            .label
            .parse::<Label>()
            .map_err(|e| Error::parse(&row.id, "label", e.to_string()))?;
        let dataset = if row.dataset.trim().is_empty() {
            Dataset::Other
        } else {
            Dataset::infer(&row.dataset)
        };
        let publish_date = if row.publish_date.trim().is_empty() {
            None
        } else {
            Some(
                parse_date(&row.publish_date)
                    .map_err(|m| Error::parse(&row.id, "publish_date", m))?,
            )
        };
        let url = Some(row.url.trim().to_string()).filter(|u| !u.is_empty());
        out.push(NewsArticle {
            authors: normalize_authors(row.authors.split(';')),
            id: row.id,
            dataset,
            label,
            title: row.title,
            body: row.text,
            url,
            publish_date,
        });
    }
    Ok(())
}

/// Writes the consolidated CSV form.
pub fn save_csv(corpus: &Corpus, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record([
        "id",
        "dataset",
        "label",
        "title",
        "text",
        "authors",
        "url",
        "publish_date",
    ])?;
    for a in corpus.articles() {
        let date = a.publish_date.map(|d| d.to_string()).unwrap_or_default();
        w.write_record([
            a.id.as_str(),
            a.dataset.as_str(),
            a.label.as_str(),
            a.title.as_str(),
            a.body.as_str(),
            a.authors.join(";").as_str(),
            a.url.as_deref().unwrap_or(""),
            date.as_str(),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Pair of ids reported by [`deduplicate`]: the survivor and the dropped copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedDuplicate {
    pub kept: String,
    pub dropped: String,
}

/// Keeps one article per distinct normalized body, choosing the smallest id.
pub fn deduplicate(corpus: &Corpus) -> (Corpus, Vec<RemovedDuplicate>) {
    let mut groups: HashMap<String, Vec<&str>> = HashMap::new();
    for a in corpus.articles() {
        groups
            .entry(normalized_body(&a.body))
            .or_default()
            .push(&a.id);
    }
    let mut dropped = HashSet::new();
    let mut removed = Vec::new();
    for ids in groups.values_mut().filter(|ids| ids.len() > 1) {
        ids.sort_unstable();
        for d in &ids[1..] {
            dropped.insert(d.to_string());
            removed.push(RemovedDuplicate {
                kept: ids[0].to_string(),
                dropped: d.to_string(),
            });
        }
    }
    removed.sort_by(|a, b| (&a.kept, &a.dropped).cmp(&(&b.kept, &b.dropped)));
    let kept = corpus.filter(|a| !dropped.contains(&a.id));
    (kept, removed)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub total: usize,
    pub fake: usize,
    #[serde(rename = "true")]
    pub real: usize,
}

impl LabelCounts {
    pub fn add(&mut self, label: Label) {
        self.total += 1;
        match label {
            Label::Fake => self.fake += 1,
            Label::True => self.real += 1,
        }
    }

    pub fn get(&self, label: Label) -> usize {
        match label {
            Label::Fake => self.fake,
            Label::True => self.real,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UrlScheme {
    Http,
    Https,
    Missing,
}

impl UrlScheme {
    /// Case-insensitive prefix classification; anything else counts as missing.
    pub fn classify(url: Option<&str>) -> Self {
        let Some(url) = url else {
            return UrlScheme::Missing;
        };
        let lower = url.trim_start().to_lowercase();
        if lower.starts_with("https://") {
            UrlScheme::Https
        } else if lower.starts_with("http://") {
            UrlScheme::Http
        } else {
            UrlScheme::Missing
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub overall: LabelCounts,
    pub per_dataset: BTreeMap<Dataset, LabelCounts>,
    pub http: LabelCounts,
    pub https: LabelCounts,
    pub missing_url: LabelCounts,
}

impl CorpusStats {
    pub fn n_http(&self) -> usize {
        self.http.total
    }

    pub fn n_https(&self) -> usize {
        self.https.total
    }

    pub fn n_missing(&self) -> usize {
        self.missing_url.total
    }
}

pub fn corpus_stats(corpus: &Corpus) -> CorpusStats {
    let mut stats = CorpusStats::default();
    for a in corpus.articles() {
        stats.overall.add(a.label);
        stats.per_dataset.entry(a.dataset).or_default().add(a.label);
        match UrlScheme::classify(a.url.as_deref()) {
            UrlScheme::Http => stats.http.add(a.label),
            UrlScheme::Https => stats.https.add(a.label),
            UrlScheme::Missing => stats.missing_url.add(a.label),
        }
    }
    stats
}
