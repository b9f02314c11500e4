//! Sentence segmentation and lexicon-based sentence sentiment.
//!
//! The scorer is a reduced VADER: summed token valences, a three-token
//! negation window, and the `s / sqrt(s² + 15)` normalization. Boosters,
//! punctuation emphasis and capitalization rules are not applied.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resources::{word_lines, BUILTIN_ABBREVIATIONS, BUILTIN_LEXICON};
use crate::textfeat::tokenize_words;

/// Normalization constant of the compound score.
pub const ALPHA: f64 = 15.0;
pub const NEGATION_SCALE: f64 = -0.74;
/// Number of preceding tokens searched for a negation.
pub const NEGATION_WINDOW: usize = 3;
pub const THRESHOLD: f64 = 0.05;

const NEGATIONS: &[&str] = &[
    "aint",
    "arent",
    "cannot",
    "cant",
    "couldnt",
    "darent",
    "didnt",
    "doesnt",
    "ain't",
    "aren't",
    "can't",
    "couldn't",
    "daren't",
    "didn't",
    "doesn't",
    "dont",
    "hadnt",
    "hasnt",
    "havent",
    "isnt",
    "mightnt",
    "mustnt",
    "neither",
    "don't",
    "hadn't",
    "hasn't",
    "haven't",
    "isn't",
    "mightn't",
    "mustn't",
    "neednt",
    "needn't",
    "never",
    "none",
    "nope",
    "nor",
    "not",
    "nothing",
    "nowhere",
    "oughtnt",
    "shant",
    "shouldnt",
    "uhuh",
    "wasnt",
    "werent",
    "oughtn't",
    "shan't",
    "shouldn't",
    "wasn't",
    "weren't",
    "without",
    "wont",
    "wouldnt",
    "won't",
    "wouldn't",
    "rarely",
    "seldom",
    "despite",
];

fn fold(token: &str) -> String {
    token.to_lowercase().replace('\u{2019}', "'")
}

#[derive(Debug, Clone)]
pub struct SentimentLexicon {
    valences: HashMap<String, f64>,
    negations: HashSet<String>,
    negation_scale: f64,
}

impl SentimentLexicon {
    pub fn builtin() -> &'static SentimentLexicon {
        static LEX: OnceLock<SentimentLexicon> = OnceLock::new();
        LEX.get_or_init(|| {
            SentimentLexicon::from_tsv(BUILTIN_LEXICON).expect("bundled lexicon parses")
        })
    }

    /// Parses `token<TAB>valence` rows; extra columns are ignored.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut valences = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut cols = line.split('\t');
            let token = cols.next().unwrap_or_default().trim();
            let raw = cols.next().ok_or_else(|| {
                Error::parse(
                    format!("lexicon line {}", n + 1),
                    "valence",
                    "missing column",
                )
            })?;
            let valence: f64 = raw.trim().parse().map_err(|_| {
                Error::parse(
                    format!("lexicon line {}", n + 1),
                    "valence",
                    format!("`{raw}` is not a number"),
                )
            })?;
            if !valence.is_finite() {
                return Err(Error::parse(
                    format!("lexicon line {}", n + 1),
                    "valence",
                    "not finite",
                ));
            }
            valences.insert(fold(token), valence);
        }
        Ok(Self::from_valences(valences))
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        Self::from_valences(pairs.into_iter().map(|(t, v)| (fold(t), v)).collect())
    }

    fn from_valences(valences: HashMap<String, f64>) -> Self {
        SentimentLexicon {
            valences,
            negations: NEGATIONS.iter().map(|s| s.to_string()).collect(),
            negation_scale: NEGATION_SCALE,
        }
    }

    pub fn with_negation_scale(mut self, scale: f64) -> Self {
        self.negation_scale = scale;
        self
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valences.get(&fold(token)).copied()
    }

    pub fn is_negation(&self, token: &str) -> bool {
        let t = fold(token);
        self.negations.contains(&t) || t.ends_with("n't")
    }

    pub fn negation_scale(&self) -> f64 {
        self.negation_scale
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }
}

/// Tokens that end with a period but do not end a sentence.
#[derive(Debug, Clone)]
pub struct Abbreviations(HashSet<String>);

const TERMINATORS: [char; 3] = ['.', '!', '?'];
const CLOSERS: [char; 6] = ['"', '\'', '\u{201d}', '\u{2019}', ')', ']'];
const OPENERS: [char; 6] = ['"', '\'', '\u{201c}', '\u{2018}', '(', '['];

impl Abbreviations {
    pub fn builtin() -> &'static Abbreviations {
        static ABBR: OnceLock<Abbreviations> = OnceLock::new();
        ABBR.get_or_init(|| Abbreviations::from_lines(BUILTIN_ABBREVIATIONS))
    }

    pub fn from_lines(text: &str) -> Self {
        Abbreviations(word_lines(text).map(str::to_lowercase).collect())
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(&token.to_lowercase())
    }

    /// Splits after `.`, `!` or `?` (plus any closing quotes or brackets)
    /// when followed by whitespace or the end of text, unless the token
    /// ending in `.` is a listed abbreviation. Segments are trimmed and
    /// empty segments dropped.
    pub fn segment<'t>(&self, text: &'t str) -> Vec<&'t str> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut chars = text.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            if !TERMINATORS.contains(&c) {
                continue;
            }
            let mut end = i + c.len_utf8();
            while let Some(&(j, d)) = chars.peek() {
                if CLOSERS.contains(&d) {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let boundary = match chars.peek() {
                None => true,
                Some(&(_, d)) => d.is_whitespace(),
            };
            if !boundary {
                continue;
            }
            // a closing quote or bracket after the period ends the sentence
            let closed = end > i + c.len_utf8();
            if c == '.' && !closed && self.ends_with_abbreviation(&text[start..end]) {
                continue;
            }
            push_trimmed(&mut out, &text[start..end]);
            start = end;
        }
        push_trimmed(&mut out, &text[start..]);
        out
    }

    fn ends_with_abbreviation(&self, segment: &str) -> bool {
        segment
            .split_whitespace()
            .last()
            .map(|tok| tok.trim_start_matches(OPENERS).trim_end_matches(CLOSERS))
            .is_some_and(|tok| self.contains(tok))
    }
}

fn push_trimmed<'t>(out: &mut Vec<&'t str>, segment: &'t str) {
    let s = segment.trim();
    if !s.is_empty() {
        out.push(s);
    }
}

/// Segments with the bundled abbreviation list.
pub fn segment_sentences(text: &str) -> Vec<&str> {
    Abbreviations::builtin().segment(text)
}

/// Compound sentiment of one sentence, in `[-1, 1]`.
pub fn score_sentence(sentence: &str, lex: &SentimentLexicon) -> f64 {
    let tokens = tokenize_words(sentence);
    let mut sum = 0.0;
    let mut hits = 0usize;
    for (i, tok) in tokens.iter().enumerate() {
        let Some(mut v) = lex.valence(tok) else {
            continue;
        };
        let window = &tokens[i.saturating_sub(NEGATION_WINDOW)..i];
        if window.iter().any(|t| lex.is_negation(t)) {
            v *= lex.negation_scale();
        }
        sum += v;
        hits += 1;
    }
    if hits == 0 {
        return 0.0;
    }
    normalize(sum)
}

/// Maps a summed valence into `(-1, 1)`.
pub fn normalize(sum: f64) -> f64 {
    sum / (sum * sum + ALPHA).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Positive,
    Negative,
    Neutral,
}

impl SentimentLabel {
    /// Order used for transition indices: positive, negative, neutral.
    pub const ORDER: [SentimentLabel; 3] = [
        SentimentLabel::Positive,
        SentimentLabel::Negative,
        SentimentLabel::Neutral,
    ];

    fn index(self) -> usize {
        match self {
            SentimentLabel::Positive => 0,
            SentimentLabel::Negative => 1,
            SentimentLabel::Neutral => 2,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            SentimentLabel::Positive => "pos",
            SentimentLabel::Negative => "neg",
            SentimentLabel::Neutral => "neu",
        }
    }
}

/// `±0.05` thresholds, boundary values on the non-neutral side.
pub fn label_sentence(compound: f64) -> SentimentLabel {
    if compound >= THRESHOLD {
        SentimentLabel::Positive
    } else if compound <= -THRESHOLD {
        SentimentLabel::Negative
    } else {
        SentimentLabel::Neutral
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SentimentProfile {
    pub p_pos: f64,
    pub p_neu: f64,
    pub p_neg: f64,
    pub n_sentences: usize,
}

impl SentimentProfile {
    pub fn from_labels(labels: &[SentimentLabel]) -> Self {
        let n = labels.len();
        if n == 0 {
            return Self::default();
        }
        let count = |l| labels.iter().filter(|&&x| x == l).count() as f64 / n as f64;
        SentimentProfile {
            p_pos: count(SentimentLabel::Positive),
            p_neu: count(SentimentLabel::Neutral),
            p_neg: count(SentimentLabel::Negative),
            n_sentences: n,
        }
    }
}

/// Fractions of consecutive sentence pairs by (earlier, later) label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SentimentSequenceProfile {
    /// Indexed `3 * from + to` with order positive, negative, neutral.
    pub fractions: [f64; 9],
    pub n_pairs: usize,
}

impl SentimentSequenceProfile {
    pub fn from_labels(labels: &[SentimentLabel]) -> Self {
        let n_pairs = labels.len().saturating_sub(1);
        let mut fractions = [0.0; 9];
        if n_pairs == 0 {
            return Self::default();
        }
        for w in labels.windows(2) {
            fractions[3 * w[0].index() + w[1].index()] += 1.0;
        }
        for f in &mut fractions {
            *f /= n_pairs as f64;
        }
        SentimentSequenceProfile { fractions, n_pairs }
    }

    pub fn get(&self, from: SentimentLabel, to: SentimentLabel) -> f64 {
        self.fractions[3 * from.index() + to.index()]
    }

    /// Feature names in storage order, e.g. `seq_pos_neg`.
    pub fn names() -> [String; 9] {
        let mut names: [String; 9] = Default::default();
        for a in SentimentLabel::ORDER {
            for b in SentimentLabel::ORDER {
                names[3 * a.index() + b.index()] = format!("seq_{}_{}", a.short(), b.short());
            }
        }
        names
    }
}

/// Per-sentence labels of `text`.
pub fn sentence_labels(
    text: &str,
    lex: &SentimentLexicon,
    abbreviations: &Abbreviations,
) -> Vec<SentimentLabel> {
    abbreviations
        .segment(text)
        .into_iter()
        .map(|s| label_sentence(score_sentence(s, lex)))
        .collect()
}

pub fn sentiment_profile(text: &str, lex: &SentimentLexicon) -> SentimentProfile {
    SentimentProfile::from_labels(&sentence_labels(text, lex, Abbreviations::builtin()))
}

pub fn sentiment_sequence_profile(text: &str, lex: &SentimentLexicon) -> SentimentSequenceProfile {
    SentimentSequenceProfile::from_labels(&sentence_labels(text, lex, Abbreviations::builtin()))
}
