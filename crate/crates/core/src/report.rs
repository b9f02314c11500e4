//! Rendering of analysis and evaluation documents as JSON, CSV or Markdown.
//! Output is a pure function of the input document.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::AnalysisReport;
use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::ml::cv::EvalReport;
use crate::ml::features::FEATURE_NAMES;
use crate::ml::models::ModelKind;
use crate::stats::{GroupComparison, StatTestResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Unknown {
                kind: "format",
                name: other.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Analysis(Box<AnalysisReport>),
    Evaluation(Vec<EvalReport>),
}

/// Reads either an analysis report (JSON object), a single evaluation report
/// or an array of them.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text)?;
    match value {
        Value::Array(_) => Ok(Document::Evaluation(serde_json::from_value(value)?)),
        Value::Object(ref map) if map.contains_key("classifier") => {
            Ok(Document::Evaluation(vec![serde_json::from_value(value)?]))
        }
        Value::Object(_) => Ok(Document::Analysis(Box::new(serde_json::from_value(value)?))),
        _ => Err(Error::Config(
            "report input must be a JSON object or array".into(),
        )),
    }
}

pub fn render(doc: &Document, format: Format) -> Result<String> {
    match (doc, format) {
        (Document::Analysis(a), Format::Json) => Ok(serde_json::to_string_pretty(a)? + "\n"),
        (Document::Evaluation(e), Format::Json) => Ok(serde_json::to_string_pretty(e)? + "\n"),
        (Document::Analysis(a), Format::Csv) => analysis_csv(a),
        (Document::Evaluation(e), Format::Csv) => eval_csv(e),
        (Document::Analysis(a), Format::Markdown) => Ok(analysis_markdown(a)),
        (Document::Evaluation(e), Format::Markdown) => Ok(eval_markdown(e)),
    }
}

fn table_header(out: &mut String, cols: &[&str]) {
    let _ = writeln!(out, "| {} |", cols.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(cols.len()));
}

fn row(out: &mut String, cells: &[String]) {
    let _ = writeln!(out, "| {} |", cells.join(" | "));
}

fn fmt_p(p: Option<f64>) -> String {
    match p {
        None => "n/a".into(),
        Some(p) if p < 0.001 => "<0.001".into(),
        Some(p) => format!("{p:.3}"),
    }
}

fn fmt_f1(v: f64) -> String {
    format!("{v:.2}")
}

/// Config groups in order of first appearance.
fn groups(reports: &[EvalReport]) -> Vec<(&str, Vec<&EvalReport>)> {
    let mut out: Vec<(&str, Vec<&EvalReport>)> = Vec::new();
    for r in reports {
        match out.iter_mut().find(|(c, _)| *c == r.feature_config) {
            Some((_, v)) => v.push(r),
            None => out.push((&r.feature_config, vec![r])),
        }
    }
    for (_, v) in &mut out {
        v.sort_by_key(|r| r.classifier);
    }
    out
}

/// One table per feature configuration; when the full roster is present a
/// final row marks the RBF-kernel SVM as not implemented.
pub fn eval_markdown(reports: &[EvalReport]) -> String {
    let mut out = String::new();
    let header = ["Classifier", "F1-micro", "F1-macro", "F1-weighted"];
    if reports.is_empty() {
        table_header(&mut out, &header);
        return out;
    }
    for (i, (config, rs)) in groups(reports).into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "### Features: {config}\n");
        table_header(&mut out, &header);
        for r in &rs {
            row(
                &mut out,
                &[
                    r.classifier.display_name().to_string(),
                    fmt_f1(r.means.f1_micro),
                    fmt_f1(r.means.f1_macro),
                    fmt_f1(r.means.f1_weighted),
                ],
            );
        }
        let complete = ModelKind::ALL
            .iter()
            .all(|k| rs.iter().any(|r| r.classifier == *k));
        if complete {
            let na = "not implemented".to_string();
            row(
                &mut out,
                &["SVM (RBF Kernel)".into(), na.clone(), na.clone(), na],
            );
        }
    }
    out
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

/// Per-fold and mean rows; numbers use the shortest exact decimal form.
pub fn eval_csv(reports: &[EvalReport]) -> Result<String> {
    csv_string(|w| {
        w.write_record([
            "classifier",
            "feature_config",
            "seed",
            "k",
            "fold",
            "f1_micro",
            "f1_macro",
            "f1_weighted",
        ])?;
        for r in reports {
            for f in &r.folds {
                w.write_record([
                    r.classifier.as_str().to_string(),
                    r.feature_config.clone(),
                    r.seed.to_string(),
                    r.k.to_string(),
                    f.fold.to_string(),
                    f.f1_micro.to_string(),
                    f.f1_macro.to_string(),
                    f.f1_weighted.to_string(),
                ])?;
            }
            w.write_record([
                r.classifier.as_str().to_string(),
                r.feature_config.clone(),
                r.seed.to_string(),
                r.k.to_string(),
                "mean".to_string(),
                r.means.f1_micro.to_string(),
                r.means.f1_macro.to_string(),
                r.means.f1_weighted.to_string(),
            ])?;
        }
        Ok(())
    })
}

/// Feature comparisons in registry order, then any unknown names.
fn ordered_features(a: &AnalysisReport) -> Vec<&GroupComparison> {
    let mut out: Vec<&GroupComparison> = FEATURE_NAMES
        .iter()
        .filter_map(|n| a.features.get(*n))
        .collect();
    out.extend(
        a.features
            .iter()
            .filter(|(k, _)| !FEATURE_NAMES.contains(&k.as_str()))
            .map(|(_, v)| v),
    );
    out
}

fn shapiro_p(r: &Option<StatTestResult>) -> Option<f64> {
    r.as_ref().and_then(|s| s.p_value)
}

pub fn analysis_markdown(a: &AnalysisReport) -> String {
    let mut out = String::new();
    if let Some(stats) = &a.corpus {
        out.push_str("### Data statistics\n\n");
        table_header(&mut out, &["Dataset", "Fake", "True", "Total"]);
        for (ds, c) in &stats.per_dataset {
            row(
                &mut out,
                &[
                    ds.to_string(),
                    c.fake.to_string(),
                    c.real.to_string(),
                    c.total.to_string(),
                ],
            );
        }
        let o = stats.overall;
        row(
            &mut out,
            &[
                "All".into(),
                o.fake.to_string(),
                o.real.to_string(),
                o.total.to_string(),
            ],
        );
        out.push('\n');
        table_header(&mut out, &["URL scheme", "Fake", "True"]);
        for (name, c) in [
            ("http", stats.http),
            ("https", stats.https),
            ("missing", stats.missing_url),
        ] {
            row(
                &mut out,
                &[
                    name.into(),
                    c.get(Label::Fake).to_string(),
                    c.get(Label::True).to_string(),
                ],
            );
        }
        out.push('\n');
    }

    out.push_str("### Feature comparison (fake vs true)\n\n");
    table_header(
        &mut out,
        &[
            "Feature",
            "Fake mean",
            "Fake median",
            "True mean",
            "True median",
            "Mann-Whitney p",
            "Shapiro p (fake)",
            "Shapiro p (true)",
        ],
    );
    for c in ordered_features(a) {
        row(
            &mut out,
            &[
                c.feature.clone(),
                format!("{:.3}", c.fake.mean),
                format!("{:.3}", c.fake.median),
                format!("{:.3}", c.real.mean),
                format!("{:.3}", c.real.median),
                fmt_p(c.mann_whitney.p_value),
                fmt_p(shapiro_p(&c.shapiro_fake)),
                fmt_p(shapiro_p(&c.shapiro_real)),
            ],
        );
    }

    if let Some(r) = a.author_correlation.as_ref().and_then(|r| r.statistic) {
        let _ = writeln!(
            out,
            "\nPearson correlation of label (true = 1) with number of authors: {r:.3}"
        );
    }

    if let Some(g) = &a.coauthor {
        out.push_str("\n### Coauthorship\n\n");
        table_header(&mut out, &["Measure", "Value"]);
        row(
            &mut out,
            &["Unique authors".into(), g.n_unique_authors.to_string()],
        );
        row(
            &mut out,
            &["Eligible authors".into(), g.n_eligible.to_string()],
        );
        row(&mut out, &["Edges".into(), g.n_edges.to_string()]);
        for (ty, n) in &g.type_counts {
            row(&mut out, &[format!("Type {}", ty.as_str()), n.to_string()]);
        }
        row(
            &mut out,
            &[
                "Mixed fraction".into(),
                format!("{:.1}%", 100.0 * g.mixed_fraction),
            ],
        );
    }

    if let Some(c) = &a.consistency {
        out.push_str("\n### Author consistency over time\n\n");
        table_header(
            &mut out,
            &[
                "Dated articles",
                "Eligible authors",
                "Consistent",
                "Contradicting",
            ],
        );
        row(
            &mut out,
            &[
                c.n_dated_articles.to_string(),
                c.n_eligible_authors.to_string(),
                c.n_consistent.to_string(),
                c.n_contradicting.to_string(),
            ],
        );
    }

    if !a.breakdown.is_empty() {
        out.push_str("\n### Articles by author type\n\n");
        table_header(&mut out, &["News", "Authors", "Author type", "Articles"]);
        for b in &a.breakdown {
            row(
                &mut out,
                &[
                    b.label.as_str().into(),
                    if b.multiple_authors {
                        "multiple"
                    } else {
                        "single"
                    }
                    .into(),
                    b.author_type.as_str().into(),
                    b.n_articles.to_string(),
                ],
            );
        }
    }

    if !a.affiliation.is_empty() {
        out.push_str("\n### Organizations in author fields\n\n");
        table_header(&mut out, &["Organization", "Fake", "True"]);
        for r in &a.affiliation {
            row(
                &mut out,
                &[
                    r.organization.clone(),
                    r.fake.to_string(),
                    r.real.to_string(),
                ],
            );
        }
    }
    out
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn analysis_csv(a: &AnalysisReport) -> Result<String> {
    csv_string(|w| {
        w.write_record([
            "feature",
            "fake_n",
            "fake_mean",
            "fake_median",
            "true_n",
            "true_mean",
            "true_median",
            "mwu_u",
            "mwu_p",
            "shapiro_w_fake",
            "shapiro_p_fake",
            "shapiro_w_true",
            "shapiro_p_true",
        ])?;
        for c in ordered_features(a) {
            let sw = |r: &Option<StatTestResult>| {
                (
                    opt(r.as_ref().and_then(|s| s.statistic)),
                    opt(r.as_ref().and_then(|s| s.p_value)),
                )
            };
            let (wf, pf) = sw(&c.shapiro_fake);
            let (wt, pt) = sw(&c.shapiro_real);
            w.write_record([
                c.feature.clone(),
                c.fake.n.to_string(),
                c.fake.mean.to_string(),
                c.fake.median.to_string(),
                c.real.n.to_string(),
                c.real.mean.to_string(),
                c.real.median.to_string(),
                opt(c.mann_whitney.statistic),
                opt(c.mann_whitney.p_value),
                wf,
                pf,
                wt,
                pt,
            ])?;
        }
        Ok(())
    })
}
