//! Seeded synthetic data: a small two-dataset news corpus with plausible
//! source and content signals, and a linearly separable feature matrix.
//! Used by tests, benchmarks and offline demos.

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Dataset, Label, NewsArticle};
use crate::ml::features::FeatureMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthConfig {
    /// Articles per label per dataset.
    pub per_class: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            per_class: 60,
            seed: 42,
        }
    }
}

const FIRST: &[&str] = &[
    "Alex", "Jordan", "Morgan", "Casey", "Riley", "Avery", "Quinn", "Parker", "Rowan", "Sage",
    "Emerson", "Hayden", "Jamie", "Kendall", "Logan", "Reese",
];
const LAST: &[&str] = &[
    "Adler", "Baker", "Castro", "Dunn", "Ellis", "Foster", "Grant", "Hale", "Ivers", "Jensen",
    "Keller", "Lowe", "Mercer", "Nolan", "Ortiz", "Price",
];

const TRUE_SENTENCES: &[&str] = &[
    "The committee voted {n} to {m} on the fiscal proposal.",
    "Lawmakers will convene on {d} to review the statute.",
    "The bipartisan bill passed the chamber after a long debate.",
    "According to the report, spending rose {p} percent in {y}.",
    "The caucus met for {n} hours during the interim session.",
    "Officials said the veto could be overridden by the legislature.",
    "The governor signed the measure on {d}.",
    "Analysts noted that the budget includes {n} new programs.",
    "Members cited precedent and decorum in the discussion.",
    "The nonpartisan office estimated costs of {p} million dollars.",
];
const FAKE_SENTENCES: &[&str] = &[
    "This is a shocking betrayal of every American!",
    "You won't believe what they are hiding!",
    "The corrupt elite are lying to you again!",
    "Share this before it gets deleted!!",
    "A petition demands the impeachment of the liar.",
    "Insiders say the truth is finally out and it is terrible.",
    "Wake up people, the goverment is watching teh whole thing!",
    "This disgusting scandal will destroy them.",
    "Patriots are furious and the legislator is panicking!",
    "What happens next is truly amazing.",
];

fn fill(template: &str, rng: &mut ChaCha8Rng) -> String {
    let mut s = template.to_string();
    for (key, value) in [
        ("{n}", rng.gen_range(2..120).to_string()),
        ("{m}", rng.gen_range(1..60).to_string()),
        ("{p}", format!("{:.1}", rng.gen_range(0.5..20.0))),
        ("{y}", rng.gen_range(2010..2018).to_string()),
        ("{d}", format!("March {}", rng.gen_range(1..29))),
    ] {
        s = s.replace(key, &value);
    }
    s
}

fn pool(rng: &mut ChaCha8Rng, n: usize, tag: &str) -> Vec<String> {
    (0..n)
        .map(|i| {
            format!(
                "{} {} {}{}",
                FIRST.choose(rng).unwrap(),
                LAST.choose(rng).unwrap(),
                tag,
                i
            )
        })
        .collect()
}

fn body(rng: &mut ChaCha8Rng, label: Label) -> String {
    let (own, other) = match label {
        Label::True => (TRUE_SENTENCES, FAKE_SENTENCES),
        Label::Fake => (FAKE_SENTENCES, TRUE_SENTENCES),
    };
    let n = match label {
        Label::True => rng.gen_range(5..12),
        Label::Fake => rng.gen_range(3..9),
    };
    (0..n)
        .map(|_| {
            let src = if rng.gen_bool(0.85) { own } else { other };
            fill(src.choose(rng).unwrap(), rng)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Balanced corpus over Politifact and Buzzfeed. True stories tend to have
/// more authors, drawn from a true-leaning pool; many fake stories are
/// unattributed.
pub fn synthetic_corpus(cfg: SynthConfig) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let true_pool = pool(&mut rng, 24, "T");
    let fake_pool = pool(&mut rng, 16, "F");
    let mixed_pool = pool(&mut rng, 4, "M");
    let start = NaiveDate::from_ymd_opt(2016, 1, 1).expect("valid date");
    let mut articles = Vec::new();
    for dataset in [Dataset::Politifact, Dataset::Buzzfeed] {
        for label in Label::ALL {
            for i in 0..cfg.per_class {
                let n_authors = match label {
                    Label::True => rng.gen_range(1..=3),
                    Label::Fake if rng.gen_bool(0.55) => 0,
                    Label::Fake => rng.gen_range(1..=2),
                };
                let authors: Vec<String> = (0..n_authors)
                    .map(|_| {
                        let src = if rng.gen_bool(0.1) {
                            &mixed_pool
                        } else if label == Label::True {
                            &true_pool
                        } else {
                            &fake_pool
                        };
                        src.choose(&mut rng).unwrap().clone()
                    })
                    .collect();
                let title = fill(
                    match label {
                        Label::True => "Legislature reviews {n} bills",
                        Label::Fake => "Shocking news about the {n} scandal you must see",
                    },
                    &mut rng,
                );
                let id = format!("{}_{}_{:03}", dataset.as_str(), label.as_str(), i);
                let mut a =
                    NewsArticle::new(id, dataset, label, title, body(&mut rng, label), authors);
                if rng.gen_bool(0.8) {
                    a = a.with_date(start + chrono::Days::new(rng.gen_range(0..600)));
                }
                let scheme = match (label, rng.gen_range(0..10)) {
                    (_, 0) => None,
                    (Label::True, _) => Some("https"),
                    (Label::Fake, k) if k < 5 => Some("http"),
                    _ => Some("https"),
                };
                if let Some(s) = scheme {
                    a = a.with_url(format!("{s}://example.org/{}/{i}", label.as_str()));
                }
                articles.push(a);
            }
        }
    }
    Corpus::new(articles).expect("generated ids are unique")
}

/// `n` rows of `d` features; every feature alone separates the classes
/// (true rows in `[0.5, 3)`, fake rows in `(-3, -0.5]`). Labels alternate.
pub fn separable_matrix(n: usize, d: usize, seed: u64) -> (FeatureMatrix, Vec<Label>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let label = if i % 2 == 0 { Label::Fake } else { Label::True };
        let sign = if label == Label::True { 1.0 } else { -1.0 };
        rows.push((0..d).map(|_| sign * rng.gen_range(0.5..3.0)).collect());
        labels.push(label);
    }
    let names = (0..d).map(|j| format!("x{j}")).collect();
    let ids = (0..n).map(|i| format!("row{i}")).collect();
    let m = FeatureMatrix::new(names, ids, rows).expect("finite generated values");
    (m, labels)
}
