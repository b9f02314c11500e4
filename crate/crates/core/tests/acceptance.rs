//! Acceptance run: one PASS / FAIL / NOT RUN line per criterion.
//!
//! Criteria 1-5 need the FakeNewsNet Politifact + Buzzfeed articles. Point
//! `CREDLENS_DATA` at either the json directory tree or a persisted corpus
//! file; without it those lines report NOT RUN. Criteria 6-9 run on
//! built-in and synthetic data. Exit status is non-zero if any criterion
//! fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use credlens::analysis::{analyze, AnalysisOptions};
use credlens::corpus::{corpus_stats, deduplicate, load_corpus, InputFormat};
use credlens::ml::cv::{
    cross_validate, cross_validate_matrix, cross_validate_with_content, evaluate_fold,
    stratified_folds, CvOptions,
};
use credlens::ml::features::{assemble_features, content_rows, FeatureConfig};
use credlens::ml::metrics::f1_scores;
use credlens::ml::models::{logreg_objective, ModelKind, ModelSpec};
use credlens::resources::Resources;
use credlens::sentiment::{
    label_sentence, score_sentence, segment_sentences, sentiment_profile, SentimentLabel,
    SentimentLexicon, SentimentProfile, SentimentSequenceProfile,
};
use credlens::sourcefeat::{
    author_count, build_author_index, build_coauthor_graph, consistency_report, history_features,
    neighbor_type_profile, AuthorType, HistoryIndex, NeighborProfile,
};
use credlens::stats::{
    mann_whitney_normal_p, mann_whitney_u, pearson_r, shapiro_wilk, StatTestResult,
};
use credlens::synth::{separable_matrix, synthetic_corpus, SynthConfig};
use credlens::textfeat::{
    count_syllables, count_urls, flesch_reading_ease, ncsl_counts, surface_counts, tokenize_words,
    typo_rate, Dictionary,
};
use credlens::{Corpus, Dataset, Error, Execution, Label, NewsArticle};
use rand::{Rng, SeedableRng};

enum Outcome {
    Pass(String),
    Fail(Vec<String>),
    NotRun(String),
}

/// Collects failed checks for one criterion.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn close(&mut self, got: f64, want: f64, tol: f64, what: &str) {
        self.check(
            (got - want).abs() <= tol,
            format!("{what}: got {got:.6}, want {want} ± {tol}"),
        );
    }

    fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    fn within(&mut self, start: Instant, limit: Duration, what: &str) {
        let took = start.elapsed();
        self.note(format!("{what} {:.2}s", took.as_secs_f64()));
        self.check(
            took < limit,
            format!("{what} took {took:?}, limit {limit:?}"),
        );
    }

    fn outcome(self) -> Outcome {
        if self.failures.is_empty() {
            Outcome::Pass(self.notes.join("; "))
        } else {
            Outcome::Fail(self.failures)
        }
    }
}

fn art(id: &str, label: Label, body: &str, authors: &[&str]) -> NewsArticle {
    NewsArticle::new(
        id,
        Dataset::Politifact,
        label,
        "",
        body,
        authors.iter().copied(),
    )
}

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (s, n) = xs
        .into_iter()
        .fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}

fn group_means(values: &[f64], labels: &[Label]) -> (f64, f64) {
    let pick = |l| {
        mean(
            values
                .iter()
                .zip(labels)
                .filter(|(_, &y)| y == l)
                .map(|(v, _)| *v),
        )
    };
    (pick(Label::Fake), pick(Label::True))
}

// ---------------------------------------------------------------- data-gated

struct Data {
    raw: Corpus,
    load_time: Duration,
}

fn load_data() -> Option<Result<Data, String>> {
    let path = PathBuf::from(std::env::var_os("CREDLENS_DATA")?);
    let format = if path.is_dir() {
        InputFormat::JsonDir
    } else {
        InputFormat::Corpus
    };
    let start = Instant::now();
    Some(
        load_corpus(&[&path], format)
            .map(|raw| Data {
                raw,
                load_time: start.elapsed(),
            })
            .map_err(|e| format!("cannot load {}: {e}", path.display())),
    )
}

fn criterion1(d: &Data) -> Outcome {
    let mut c = Checks::default();
    let start = Instant::now();
    let stats = corpus_stats(&d.raw);
    c.within(start - d.load_time, Duration::from_secs(5), "load + stats");
    for (ds, total, each) in [
        (Dataset::Politifact, 240, 120),
        (Dataset::Buzzfeed, 182, 91),
    ] {
        let got = stats.per_dataset.get(&ds).copied().unwrap_or_default();
        c.note(format!(
            "{} {}/{}/{}",
            ds.as_str(),
            got.total,
            got.fake,
            got.real
        ));
        c.check(
            got.total == total && got.fake == each && got.real == each,
            format!(
                "{}: {}/{}/{} vs {total}/{each}/{each}",
                ds.as_str(),
                got.total,
                got.fake,
                got.real
            ),
        );
    }
    c.outcome()
}

fn criterion2(corpus: &Corpus) -> Outcome {
    let mut c = Checks::default();
    let start = Instant::now();
    let labels = corpus.labels();
    let counts: Vec<f64> = corpus
        .articles()
        .iter()
        .map(|a| author_count(a) as f64)
        .collect();
    let (fake, real) = group_means(&counts, &labels);
    c.close(fake, 0.66, 0.3, "mean authors (fake)");
    c.close(real, 1.97, 0.3, "mean authors (true)");
    let indicator: Vec<f64> = labels.iter().map(|l| l.indicator()).collect();
    match pearson_r(&indicator, &counts) {
        Ok(r) => c.close(r, 0.406, 0.1, "pearson(label, n_authors)"),
        Err(e) => c.check(false, format!("pearson: {e}")),
    }
    let (a, b): (Vec<f64>, Vec<f64>) = split_by_label(&counts, &labels);
    match mann_whitney_u(&a, &b) {
        Ok(m) => c.check(
            m.p_value < 0.01,
            format!("author-count MWU p = {}", m.p_value),
        ),
        Err(e) => c.check(false, format!("mwu: {e}")),
    }
    c.within(start, Duration::from_secs(10), "author analysis");
    c.outcome()
}

fn split_by_label(values: &[f64], labels: &[Label]) -> (Vec<f64>, Vec<f64>) {
    let side = |l| {
        values
            .iter()
            .zip(labels)
            .filter(|(_, &y)| y == l)
            .map(|(v, _)| *v)
            .collect()
    };
    (side(Label::Fake), side(Label::True))
}

fn criterion3(corpus: &Corpus) -> Outcome {
    let mut c = Checks::default();
    let start = Instant::now();
    let index = build_author_index(corpus);
    let graph = build_coauthor_graph(&index, 2);
    let n_eligible = graph.nodes.len();
    c.note(format!(
        "{n_eligible} eligible, mixed {:.1}%",
        100.0 * graph.mixed_fraction()
    ));
    c.close(n_eligible as f64, 87.0, 10.0, "eligible authors");
    c.close(
        100.0 * graph.mixed_fraction(),
        12.7,
        5.0,
        "mixed fraction (points)",
    );
    let cons = consistency_report(corpus, 2);
    c.note(format!(
        "{} dated eligible, {} contradicting",
        cons.n_eligible_authors, cons.n_contradicting
    ));
    c.close(
        cons.n_eligible_authors as f64,
        69.0,
        10.0,
        "dated eligible authors",
    );
    c.close(
        cons.n_contradicting as f64,
        11.0,
        4.0,
        "contradicting authors",
    );
    c.within(start, Duration::from_secs(10), "coauthorship");
    c.outcome()
}

fn criterion4(corpus: &Corpus) -> Outcome {
    let mut c = Checks::default();
    let start = Instant::now();
    let report = match analyze(corpus, Resources::builtin(), AnalysisOptions::default()) {
        Ok((r, _)) => r,
        Err(e) => return Outcome::Fail(vec![format!("analyze: {e}")]),
    };
    let p = |f: &str| report.features[f].mann_whitney.p_value.unwrap_or(f64::NAN);
    c.check(
        p("n_digits") <= 0.05,
        format!("digits MWU p = {}", p("n_digits")),
    );
    c.check(
        p("flesch_score") <= 0.05,
        format!("readability MWU p = {}", p("flesch_score")),
    );
    let fl = &report.features["flesch_score"];
    c.check(
        fl.fake.mean > fl.real.mean,
        format!(
            "flesch means fake {} vs true {}",
            fl.fake.mean, fl.real.mean
        ),
    );
    let ty = &report.features["typo_rate"];
    c.check(
        ty.real.mean > ty.fake.mean,
        format!("typo means true {} vs fake {}", ty.real.mean, ty.fake.mean),
    );
    c.note(format!(
        "p digits {:.4}, p flesch {:.4}",
        p("n_digits"),
        p("flesch_score")
    ));
    c.within(start, Duration::from_secs(120), "analysis pipeline");
    c.outcome()
}

fn criterion5(corpus: &Corpus) -> Outcome {
    let mut c = Checks::default();
    let start = Instant::now();
    let res = Resources::builtin();
    let content = match content_rows(corpus, res, Execution::Parallel) {
        Ok(rows) => rows,
        Err(e) => return Outcome::Fail(vec![format!("featurize: {e}")]),
    };
    let run = |kind: ModelKind, config: &FeatureConfig, seed: u64| {
        let opts = CvOptions {
            seed,
            ..CvOptions::default()
        };
        cross_validate_with_content(
            &ModelSpec::new(kind).with_seed(seed),
            corpus,
            &content,
            config,
            &opts,
        )
        .map(|r| r.means.f1_macro)
    };
    let logreg: Result<Vec<f64>, Error> = (42..47)
        .map(|s| run(ModelKind::Logreg, &FeatureConfig::all26(), s))
        .collect();
    match logreg {
        Ok(scores) => {
            let m = mean(scores);
            c.note(format!("logreg all26 {m:.3}"));
            c.check(m >= 0.72, format!("logreg all26 macro-F1 {m:.4} < 0.72"));
        }
        Err(e) => c.check(false, format!("logreg: {e}")),
    }
    let best = |config: &FeatureConfig| -> Result<f64, Error> {
        let mut best = f64::MIN;
        for kind in ModelKind::ALL {
            best = best.max(run(kind, config, 42)?);
        }
        Ok(best)
    };
    match (
        best(&FeatureConfig::source3()),
        best(&FeatureConfig::content23()),
    ) {
        (Ok(src), Ok(content)) => {
            c.note(format!(
                "best source3 {src:.3}, best content23 {content:.3}"
            ));
            c.check(
                src >= 0.70,
                format!("best source3 macro-F1 {src:.4} < 0.70"),
            );
            c.check(
                src >= content,
                format!("source3 {src:.4} below content23 {content:.4}"),
            );
        }
        (Err(e), _) | (_, Err(e)) => c.check(false, format!("roster: {e}")),
    }
    c.within(start, Duration::from_secs(600), "classification");
    c.outcome()
}

// -------------------------------------------------------------- self-contained

fn criterion6() -> Outcome {
    let mut c = Checks::default();

    // Every tie-free arrangement is a choice of ranks for the first sample.
    let mut worst = (0.0, String::new());
    let mut cases = 0usize;
    for n in 2..=10usize {
        for n_a in 1..n {
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != n_a {
                    continue;
                }
                let (a, b): (Vec<f64>, Vec<f64>) = {
                    let ranks = (1..=n).map(|r| r as f64);
                    let (a, b): (Vec<_>, Vec<_>) =
                        ranks.enumerate().partition(|(i, _)| mask >> i & 1 == 1);
                    (
                        a.into_iter().map(|x| x.1).collect(),
                        b.into_iter().map(|x| x.1).collect(),
                    )
                };
                let exact = enumerated_p(&a, &b);
                let approx = mann_whitney_normal_p(&a, &b).expect("valid samples");
                cases += 1;
                let gap = (approx - exact).abs();
                if gap > worst.0 {
                    worst = (gap, format!("a={a:?} b={b:?}"));
                }
            }
        }
    }
    c.note(format!(
        "{cases} MWU arrangements, worst gap {:.4}",
        worst.0
    ));
    c.check(
        worst.0 <= 0.05,
        format!(
            "MWU normal vs exact gap {:.4} > 0.05 at {}",
            worst.0, worst.1
        ),
    );

    for (name, sample, w) in [
        (
            "1..20",
            (1..=20).map(f64::from).collect::<Vec<_>>(),
            0.9603751832429884,
        ),
        ("n3", vec![1., 2., 4.], 0.9642857142857142),
        (
            "n5 skewed",
            vec![0.1, 0.4, 0.5, 2.3, 7.9],
            0.7399343758907062,
        ),
        (
            "n8",
            vec![2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 9.7],
            0.8240168796949228,
        ),
        (
            "n12",
            vec![
                -1.2, 0.3, 0.8, -0.4, 1.9, -0.1, 0.05, -2.1, 0.6, 1.1, -0.7, 0.2,
            ],
            0.9881412972274396,
        ),
    ] {
        match shapiro_wilk(&sample) {
            Ok(r) => c.close(r.w, w, 1e-3, &format!("shapiro W {name}")),
            Err(e) => c.check(false, format!("shapiro {name}: {e}")),
        }
    }
    c.check(shapiro_wilk(&[1.0, 2.0]).is_err(), "shapiro n=2 accepted");

    match pearson_r(&[1., 2., 3.], &[1., 2., 2.]) {
        Ok(r) => c.close(r, 3f64.sqrt() / 2.0, 1e-12, "pearson triple"),
        Err(e) => c.check(false, format!("pearson: {e}")),
    }
    c.outcome()
}

/// Two-sided p by listing every way to pick the first sample's ranks.
fn enumerated_p(a: &[f64], b: &[f64]) -> f64 {
    let u_of = |a: &[f64], b: &[f64]| {
        a.iter()
            .map(|x| b.iter().filter(|y| x > y).count())
            .sum::<usize>()
    };
    let n = a.len() + b.len();
    let observed = u_of(a, b);
    let (mut lo, mut hi, mut total) = (0usize, 0usize, 0usize);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let (x, y): (Vec<f64>, Vec<f64>) = {
            let (x, y): (Vec<_>, Vec<_>) = (0..n).partition(|i| mask >> i & 1 == 1);
            (
                x.iter().map(|&i| i as f64).collect(),
                y.iter().map(|&i| i as f64).collect(),
            )
        };
        let u = u_of(&x, &y);
        total += 1;
        lo += usize::from(u <= observed);
        hi += usize::from(u >= observed);
    }
    (2.0 * lo.min(hi) as f64 / total as f64).min(1.0)
}

fn criterion7() -> Outcome {
    let mut c = Checks::default();
    let res = Resources::builtin();

    // corpus
    c.check(
        Corpus::new(vec![]).map(|x| x.is_empty()).unwrap_or(false),
        "empty corpus",
    );
    let a = art("a", Label::Fake, "x", &["  Jane  Doe ", "Jane Doe"]);
    c.check(
        a.authors == ["Jane Doe"],
        format!("author normalization {:?}", a.authors),
    );
    let triple = Corpus::new(vec![
        art("1", Label::Fake, "same", &[]),
        art("2", Label::True, "same", &[]),
        art("3", Label::Fake, "same", &[]),
    ])
    .expect("distinct ids");
    let (kept, removed) = deduplicate(&triple);
    c.check(
        kept.len() == 1 && removed.len() == 2,
        "three identical bodies dedup",
    );
    let distinct = Corpus::new(vec![
        art("1", Label::Fake, "p", &[]),
        art("2", Label::True, "q", &[]),
    ])
    .unwrap();
    c.check(
        deduplicate(&distinct).1.is_empty(),
        "distinct bodies dedup no-op",
    );
    let https = Corpus::new(vec![art("h", Label::Fake, "b", &[]).with_url("HTTPS://x.y")]).unwrap();
    let st = corpus_stats(&https);
    c.check(
        st.n_https() == 1 && st.https.fake == 1,
        "https case-insensitive",
    );
    let empty_stats = corpus_stats(&Corpus::new(vec![]).unwrap());
    c.check(
        empty_stats.overall.total == 0 && empty_stats.n_missing() == 0,
        "empty stats",
    );

    // sentiment
    c.check(
        segment_sentences("A. B? C!") == ["A.", "B?", "C!"],
        "three terminators",
    );
    c.check(segment_sentences("").is_empty(), "empty segmentation");
    c.check(
        segment_sentences("Dr. Smith won. He smiled.").len() == 2,
        "abbreviation segmentation",
    );
    let lex = SentimentLexicon::from_pairs([("good", 1.9)]);
    c.close(score_sentence("good", &lex), 0.4404, 1e-4, "compound good");
    // exact value of the formula is -0.341238; the 4-place figure is rounded loosely
    c.close(
        score_sentence("not good", &lex),
        -0.3413,
        1e-4,
        "compound not good",
    );
    c.check(
        score_sentence("nothing here", &lex) == 0.0,
        "no lexicon tokens",
    );
    c.check(
        label_sentence(0.0) == SentimentLabel::Neutral,
        "0.0 neutral",
    );
    c.check(
        label_sentence(0.05) == SentimentLabel::Positive,
        "0.05 positive",
    );
    c.check(
        label_sentence(-0.0501) == SentimentLabel::Negative,
        "-0.0501 negative",
    );
    use SentimentLabel::{Negative as N, Neutral as U, Positive as P};
    let prof = SentimentProfile::from_labels(&[P, N, P]);
    c.close(prof.p_pos, 2.0 / 3.0, 1e-12, "p_pos");
    c.close(prof.p_neg, 1.0 / 3.0, 1e-12, "p_neg");
    c.close(prof.p_neu, 0.0, 0.0, "p_neu");
    c.check(
        sentiment_profile("", &res.lexicon) == SentimentProfile::default(),
        "empty profile",
    );
    let seq = SentimentSequenceProfile::from_labels(&[P, N, P]);
    c.check(
        seq.get(P, N) == 0.5 && seq.get(N, P) == 0.5 && seq.fractions.iter().sum::<f64>() == 1.0,
        "seq PNP",
    );
    c.check(
        SentimentSequenceProfile::from_labels(&[N, N, N]).get(N, N) == 1.0,
        "seq NNN",
    );
    let one = SentimentSequenceProfile::from_labels(&[U]);
    c.check(
        one.n_pairs == 0 && one.fractions == [0.0; 9],
        "single sentence seq",
    );
    for text in [
        "It was a wonderful day. Terrible news followed. Nobody knows why.",
        "Great! Awful? Fine.",
        "The committee met on Tuesday.",
    ] {
        let p = sentiment_profile(text, &res.lexicon);
        c.close(p.p_pos + p.p_neu + p.p_neg, 1.0, 1e-12, "profile sums to 1");
    }

    // textfeat
    c.check(
        tokenize_words("don't stop 123") == ["don't", "stop"],
        "tokenize apostrophe",
    );
    c.check(tokenize_words("").is_empty(), "tokenize empty");
    c.check(
        tokenize_words("Hello,world") == ["Hello", "world"],
        "tokenize punctuation",
    );
    let sc = surface_counts(&art("s", Label::Fake, "Hi! #1?", &[]));
    c.check(
        sc.n_special == 3 && sc.n_digits == 1 && sc.n_chars == 7,
        format!("surface counts {sc:?}"),
    );
    c.check(
        count_urls("see https://a.b and http://c.d") == 2,
        "url count",
    );
    c.check(count_syllables("cat") == 1, "syllables cat");
    c.check(count_syllables("table") == 2, "syllables table");
    c.check(count_syllables("the") == 1, "syllables the");
    c.close(
        flesch_reading_ease("The cat sat.").score,
        119.19,
        1e-9,
        "flesch hand check",
    );
    let f0 = flesch_reading_ease("");
    c.check(f0.score == 0.0 && f0.degenerate, "flesch empty");
    let dict = Dictionary::from_words(["cat", "dog"]);
    c.check(
        typo_rate("cat dog", &dict).ok() == Some(0.0),
        "typo all known",
    );
    c.close(
        typo_rate("zzxqy cat dog", &dict).unwrap_or(f64::NAN),
        1.0 / 3.0,
        1e-12,
        "typo 1/3",
    );
    c.check(
        typo_rate("cat", &Dictionary::from_words(Vec::<&str>::new())).is_err(),
        "empty dictionary",
    );
    let n = ncsl_counts("The veto and the caucus.", &res.domain_words);
    c.check(
        (n.fake_only, n.true_only) == (0, 2),
        format!("ncsl true-only {n:?}"),
    );
    let n = ncsl_counts("impeachment petition impeachment", &res.domain_words);
    c.check(
        (n.fake_only, n.true_only) == (3, 0),
        format!("ncsl fake-only {n:?}"),
    );
    let n = ncsl_counts("The cat sat.", &res.domain_words);
    c.check((n.fake_only, n.true_only) == (0, 0), "ncsl none");

    // sourcefeat
    c.check(
        author_count(&art("x", Label::Fake, "", &[])) == 0,
        "no authors",
    );
    c.check(
        author_count(&art("x", Label::Fake, "", &["A", "B"])) == 2,
        "two authors",
    );
    c.check(
        build_author_index(&Corpus::new(vec![]).unwrap()).n_unique_authors() == 0,
        "empty index",
    );
    let three = Corpus::new(vec![
        art("1", Label::Fake, "a", &["Solo"]),
        art("2", Label::Fake, "b", &["Solo"]),
        art("3", Label::True, "c", &["Solo"]),
    ])
    .unwrap();
    let idx = build_author_index(&three);
    c.check(
        idx.get("solo").map(|e| e.articles.len()) == Some(3),
        "index entry of three",
    );
    let pair = Corpus::new(vec![
        art("1", Label::True, "a", &["A", "B"]),
        art("2", Label::True, "b", &["A", "B"]),
        art("3", Label::True, "c", &["Loner"]),
        art("4", Label::True, "d", &["Loner"]),
    ])
    .unwrap();
    let g = build_coauthor_graph(&build_author_index(&pair), 2);
    c.check(
        g.edges.len() == 1 && g.edges.values().all(|&w| w == 2),
        "shared pair edge weight 2",
    );
    c.check(
        g.neighbors("loner").count() == 0 && g.nodes.contains_key("loner"),
        "isolated node",
    );
    let profiles = neighbor_type_profile(&g);
    c.check(
        profiles["loner"] == NeighborProfile::default(),
        "isolated profile",
    );
    let star = Corpus::new(vec![
        art("1", Label::Fake, "a", &["Hub", "F1"]),
        art("2", Label::Fake, "b", &["Hub", "F2"]),
        art("3", Label::Fake, "c", &["F1"]),
        art("4", Label::Fake, "d", &["F2"]),
    ])
    .unwrap();
    let sg = build_coauthor_graph(&build_author_index(&star), 2);
    let sp = neighbor_type_profile(&sg);
    c.check(
        sp["hub"]
            == NeighborProfile {
                n_true_only: 0,
                n_fake_only: 2,
                n_mixed: 0,
            },
        format!("fake-only neighbors {:?}", sp["hub"]),
    );
    let tri = Corpus::new(vec![
        art("1", Label::True, "a", &["X", "Y", "Z"]),
        art("2", Label::True, "b", &["X", "Y", "Z"]),
    ])
    .unwrap();
    let tp = neighbor_type_profile(&build_coauthor_graph(&build_author_index(&tri), 2));
    c.check(
        tp.values().all(|p| {
            *p == NeighborProfile {
                n_true_only: 2,
                n_fake_only: 0,
                n_mixed: 0,
            }
        }),
        "true-only triangle",
    );
    let target = art("t", Label::True, "t", &["Ann"]);
    let reference = [
        art("r1", Label::Fake, "1", &["Ann"]),
        art("r2", Label::Fake, "2", &["Ann", "Bo"]),
    ];
    let h = history_features(&target, &reference);
    c.check(
        h.map(|h| (h.past_fake, h.past_true)).ok() == Some((2, 0)),
        "history (2, 0)",
    );
    let stranger = art("s", Label::True, "s", &["Nobody"]);
    let h = history_features(&stranger, &reference);
    c.check(
        h.map(|h| (h.past_fake, h.past_true)).ok() == Some((0, 0)),
        "history unknown author",
    );
    c.check(
        matches!(
            history_features(&reference[0], &reference),
            Err(Error::Leakage(_))
        ),
        "history self-reference",
    );
    let dated = |id: &str, l, d: u32| {
        art(id, l, id, &["Dee"]).with_date(chrono::NaiveDate::from_ymd_opt(2016, 1, d).unwrap())
    };
    let cons = consistency_report(
        &Corpus::new(vec![
            dated("1", Label::True, 1),
            dated("2", Label::True, 2),
            dated("3", Label::True, 3),
        ])
        .unwrap(),
        2,
    );
    c.check(
        cons.n_consistent == 1 && cons.n_contradicting == 0,
        "consistent author",
    );
    let cons = consistency_report(
        &Corpus::new(vec![dated("1", Label::Fake, 1), dated("2", Label::True, 2)]).unwrap(),
        2,
    );
    c.check(cons.n_contradicting == 1, "contradicting author");
    c.check(
        AuthorType::from_labels(&[Label::Fake], 2) == AuthorType::Insufficient,
        "single article ineligible",
    );

    // stats
    c.close(
        pearson_r(&[1., 2., 3.], &[1., 2., 3.]).unwrap_or(f64::NAN),
        1.0,
        1e-12,
        "pearson y = x",
    );
    c.close(
        pearson_r(&[1., 2., 3.], &[-1., -2., -3.]).unwrap_or(f64::NAN),
        -1.0,
        1e-12,
        "pearson y = -x",
    );
    c.check(
        pearson_r(&[1., 1.], &[1., 2.]).is_err(),
        "pearson zero variance",
    );
    let m = mann_whitney_u(&[1., 2., 3.], &[4., 5., 6.]).unwrap();
    c.check(m.u == 0.0, "U separation");
    let m = mann_whitney_u(&[1., 2., 3., 4.], &[1., 2., 3., 4.]).unwrap();
    c.check(m.u == 8.0 && (m.p_value - 1.0).abs() < 1e-9, "U identical");
    c.close(
        mann_whitney_u(&[1., 2.], &[3., 4.]).unwrap().p_value,
        2.0 / 6.0,
        1e-12,
        "exact p 2x2",
    );
    let flat = StatTestResult::mann_whitney(&[3.0; 10], &[3.0; 10]).unwrap();
    c.check(
        flat.p_value == Some(1.0) && flat.notes.iter().any(|n| n.contains("all ties")),
        "all-ties flag",
    );

    // ml features
    let two = art("n", Label::True, "", &["P", "Q"]);
    let reference = HistoryIndex::new(&[art("old", Label::Fake, "o", &["Q"])]);
    match assemble_features(&two, &FeatureConfig::source3(), &reference, res) {
        Ok(v) => c.check(
            v.values == [2.0, 1.0, 0.0],
            format!("source3 vector {:?}", v.values),
        ),
        Err(e) => c.check(false, format!("source3: {e}")),
    }
    match assemble_features(&two, &FeatureConfig::all26(), &HistoryIndex::default(), res) {
        Ok(v) => {
            let nonzero: Vec<&str> = v
                .names
                .iter()
                .zip(&v.values)
                .filter(|(_, x)| **x != 0.0)
                .map(|(n, _)| n.as_str())
                .collect();
            c.check(
                nonzero == ["n_authors"],
                format!("empty body nonzero features {nonzero:?}"),
            );
        }
        Err(e) => c.check(false, format!("all26 empty body: {e}")),
    }

    // metrics
    let f = f1_scores(&[1, 1, 0, 0], &[1, 1, 0, 0]).unwrap();
    c.check(
        (f.f1_micro, f.f1_macro, f.f1_weighted) == (1.0, 1.0, 1.0),
        "perfect F1",
    );
    let f = f1_scores(&[1, 1, 0, 0], &[1, 0, 1, 0]).unwrap();
    c.check(
        (f.f1_micro, f.f1_macro, f.f1_weighted) == (0.5, 0.5, 0.5),
        "half F1",
    );
    let f = f1_scores(&[1, 1, 0, 0], &[1, 1, 1, 1]).unwrap();
    c.close(f.f1_macro, 1.0 / 3.0, 1e-12, "one-class macro F1");
    c.check(f1_scores(&[1, 0], &[1]).is_err(), "F1 length mismatch");
    c.check(
        matches!(
            stratified_folds(&[Label::Fake, Label::True, Label::True], 2, 1),
            Err(Error::Folds { .. })
        ),
        "class count < k",
    );

    // determinism and label blindness over a synthetic corpus
    let corpus = synthetic_corpus(SynthConfig {
        per_class: 30,
        seed: 11,
    });
    let flipped = Corpus::new(
        corpus
            .articles()
            .iter()
            .cloned()
            .map(|mut a| {
                a.label = a.label.flip();
                a
            })
            .collect(),
    )
    .unwrap();
    let rows = |corpus: &Corpus, exec| {
        content_rows(corpus, res, exec)
            .map(|r| r.iter().map(|x| x.0.map(f64::to_bits)).collect::<Vec<_>>())
    };
    let base = rows(&corpus, Execution::Parallel).ok();
    c.check(base.is_some(), "content rows");
    c.check(
        base == rows(&corpus, Execution::Parallel).ok(),
        "feature determinism",
    );
    c.check(
        base == rows(&corpus, Execution::Sequential).ok(),
        "parallel vs sequential features",
    );
    c.check(
        base == rows(&flipped, Execution::Parallel).ok(),
        "label blindness",
    );
    c.outcome()
}

fn criterion8() -> Outcome {
    let mut c = Checks::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (n, d) = (rng.gen_range(2..30), rng.gen_range(1..6));
        let x: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect())
            .collect();
        let y: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_bool(0.5))).collect();
        let p: Vec<f64> = (0..=d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (_, grad) = logreg_objective(&p, &x, &y, 1.0);
        for j in 0..=d {
            let h = 1e-5;
            let (mut up, mut down) = (p.clone(), p.clone());
            up[j] += h;
            down[j] -= h;
            let fd = (logreg_objective(&up, &x, &y, 1.0).0
                - logreg_objective(&down, &x, &y, 1.0).0)
                / (2.0 * h);
            worst = worst.max((fd - grad[j]).abs() / grad[j].abs().max(fd.abs()).max(1.0));
        }
    }
    c.note(format!("gradient rel. err {worst:.1e}"));
    c.check(worst <= 1e-5, format!("gradient relative error {worst:e}"));

    let (x, y) = separable_matrix(200, 5, 42);
    for kind in ModelKind::ALL {
        match cross_validate_matrix(&ModelSpec::new(kind), &x, &y, &CvOptions::default()) {
            Ok(r) => c.check(
                r.means.f1_macro == 1.0,
                format!("{kind} separable macro-F1 {}", r.means.f1_macro),
            ),
            Err(e) => c.check(false, format!("{kind}: {e}")),
        }
    }

    let corpus = synthetic_corpus(SynthConfig {
        per_class: 25,
        seed: 3,
    });
    for kind in ModelKind::ALL {
        let spec = ModelSpec::new(kind);
        let once = || {
            cross_validate(
                &spec,
                &corpus,
                &FeatureConfig::all26(),
                Resources::builtin(),
                &CvOptions::default(),
            )
            .map(|r| serde_json::to_string(&r).expect("serializable"))
        };
        let (a, b) = (once(), once());
        c.check(
            a.is_ok() && a.ok() == b.ok(),
            format!("{kind} repeated runs differ"),
        );
    }
    c.outcome()
}

fn criterion9() -> Outcome {
    let mut c = Checks::default();
    let corpus = synthetic_corpus(SynthConfig {
        per_class: 20,
        seed: 9,
    });
    let res = Resources::builtin();
    let content = content_rows(&corpus, res, Execution::Sequential).expect("content rows");
    let folds = stratified_folds(&corpus.labels(), 5, 42).expect("folds");
    let (train, test): (Vec<usize>, Vec<usize>) = (0..corpus.len()).partition(|&i| folds[i] != 0);
    let spec = ModelSpec::new(ModelKind::Logreg);
    let config = FeatureConfig::all26();

    let clean = HistoryIndex::new(train.iter().map(|&i| &corpus.articles()[i]));
    let ok = evaluate_fold(&spec, &corpus, &content, &config, 0, &train, &test, &clean);
    c.check(ok.is_ok(), format!("clean fold failed: {:?}", ok.err()));

    let leaked_id = corpus.articles()[test[0]].id.clone();
    let dirty = HistoryIndex::new(
        train
            .iter()
            .chain(&test[..1])
            .map(|&i| &corpus.articles()[i]),
    );
    match evaluate_fold(&spec, &corpus, &content, &config, 0, &train, &test, &dirty) {
        Err(Error::Leakage(id)) => c.check(id == leaked_id, format!("leak reported for {id}")),
        other => c.check(
            false,
            format!(
                "expected leakage error, got {:?}",
                other.map(|r| r.f1_macro)
            ),
        ),
    }
    c.outcome()
}

fn main() -> ExitCode {
    let mut results: BTreeMap<u8, Outcome> = BTreeMap::new();
    match load_data() {
        None => {
            for k in 1..=5 {
                results.insert(
                    k,
                    Outcome::NotRun("data unavailable, set CREDLENS_DATA".into()),
                );
            }
        }
        Some(Err(e)) => {
            for k in 1..=5 {
                results.insert(k, Outcome::Fail(vec![e.clone()]));
            }
        }
        Some(Ok(data)) => {
            results.insert(1, criterion1(&data));
            let (corpus, removed) = deduplicate(&data.raw);
            eprintln!(
                "dedup removed {} articles, {} remain",
                removed.len(),
                corpus.len()
            );
            results.insert(2, criterion2(&corpus));
            results.insert(3, criterion3(&corpus));
            results.insert(4, criterion4(&corpus));
            results.insert(5, criterion5(&corpus));
        }
    }
    results.insert(6, criterion6());
    results.insert(7, criterion7());
    results.insert(8, criterion8());
    results.insert(9, criterion9());

    let mut failed = false;
    for (k, outcome) in &results {
        match outcome {
            Outcome::Pass(notes) if notes.is_empty() => println!("criterion {k}: PASS"),
            Outcome::Pass(notes) => println!("criterion {k}: PASS ({notes})"),
            Outcome::NotRun(why) => println!("criterion {k}: NOT RUN ({why})"),
            Outcome::Fail(why) => {
                failed = true;
                println!("criterion {k}: FAIL ({})", why.join("; "));
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
