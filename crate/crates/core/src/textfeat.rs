//! Content features: word tokens, surface counts, reading ease, typo rate and
//! domain-vocabulary counts. All extractors work on the article body; the
//! title only contributes its word count.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::NewsArticle;
use crate::error::{Error, Result};
use crate::resources::word_lines;
use crate::sentiment::Abbreviations;

pub const SPECIAL_CHARS: [char; 10] = ['!', '#', '$', '%', '*', '+', '-', '?', '@', '|'];

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Maximal runs of letters, keeping apostrophes that sit between two letters.
pub fn tokenize_words(text: &str) -> Vec<&str> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_alphabetic() {
            start.get_or_insert(i);
            continue;
        }
        if let Some(s) = start {
            let next_is_letter = chars.peek().is_some_and(|&(_, d)| d.is_alphabetic());
            if is_apostrophe(c) && next_is_letter {
                continue;
            }
            tokens.push(&text[s..i]);
            start = None;
        }
    }
    if let Some(s) = start {
        tokens.push(&text[s..]);
    }
    tokens
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCounts {
    pub n_chars: usize,
    pub n_words: usize,
    pub n_sentences: usize,
    pub n_title_words: usize,
    pub words_per_sentence: f64,
    pub chars_per_word: f64,
    pub n_special: usize,
    pub n_digits: usize,
    pub n_urls: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn count_urls(text: &str) -> usize {
    let lower = text.to_lowercase();
    lower.matches("http://").count() + lower.matches("https://").count()
}

pub fn surface_counts(article: &NewsArticle) -> SurfaceCounts {
    surface_counts_with(article, Abbreviations::builtin())
}

pub fn surface_counts_with(article: &NewsArticle, abbreviations: &Abbreviations) -> SurfaceCounts {
    let body = &article.body;
    let n_chars = body.chars().count();
    let n_words = tokenize_words(body).len();
    let n_sentences = abbreviations.segment(body).len();
    SurfaceCounts {
        n_chars,
        n_words,
        n_sentences,
        n_title_words: tokenize_words(&article.title).len(),
        words_per_sentence: ratio(n_words, n_sentences),
        chars_per_word: ratio(n_chars, n_words),
        n_special: body.chars().filter(|c| SPECIAL_CHARS.contains(c)).count(),
        n_digits: body.chars().filter(char::is_ascii_digit).count(),
        n_urls: count_urls(body),
    }
}

/// Vowel-group syllable estimate with a silent-`e` adjustment; never below 1.
pub fn count_syllables(word: &str) -> usize {
    let lower = word.to_lowercase();
    let is_vowel = |c: char| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y');
    let mut groups = 0;
    let mut prev_vowel = false;
    for c in lower.chars() {
        let v = is_vowel(c);
        if v && !prev_vowel {
            groups += 1;
        }
        prev_vowel = v;
    }
    if groups > 1 && lower.ends_with('e') && !lower.ends_with("le") {
        groups -= 1;
    }
    groups.max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Readability {
    pub score: f64,
    /// Set when the text has no words or no sentences; `score` is then 0.
    pub degenerate: bool,
}

pub fn flesch_reading_ease(text: &str) -> Readability {
    flesch_reading_ease_with(text, Abbreviations::builtin())
}

/// `206.835 - 1.015 * words/sentence - 84.6 * syllables/word`.
pub fn flesch_reading_ease_with(text: &str, abbreviations: &Abbreviations) -> Readability {
    let words = tokenize_words(text);
    let n_sentences = abbreviations.segment(text).len();
    if words.is_empty() || n_sentences == 0 {
        return Readability {
            score: 0.0,
            degenerate: true,
        };
    }
    let n_words = words.len() as f64;
    let syllables: usize = words.iter().map(|w| count_syllables(w)).sum();
    Readability {
        score: 206.835
            - 1.015 * (n_words / n_sentences as f64)
            - 84.6 * (syllables as f64 / n_words),
        degenerate: false,
    }
}

/// Casefolded reference word list.
#[derive(Debug, Clone, Default)]
pub struct Dictionary(HashSet<String>);

impl Dictionary {
    pub fn from_lines(text: &str) -> Self {
        Self::from_words(word_lines(text))
    }

    pub fn from_words<S: AsRef<str>>(words: impl IntoIterator<Item = S>) -> Self {
        Dictionary(
            words
                .into_iter()
                .map(|w| w.as_ref().to_lowercase())
                .collect(),
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Fraction of word tokens missing from `dictionary`; 0 for a text without tokens.
pub fn typo_rate(text: &str, dictionary: &Dictionary) -> Result<f64> {
    if dictionary.is_empty() {
        return Err(Error::Config("typo dictionary is empty".into()));
    }
    let tokens = tokenize_words(text);
    let misses = tokens.iter().filter(|t| !dictionary.contains(t)).count();
    Ok(ratio(misses, tokens.len()))
}

/// Legislative vocabulary seen only in fake or only in true stories.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainWordLists {
    pub fake_only: HashSet<String>,
    pub true_only: HashSet<String>,
}

impl DomainWordLists {
    pub fn new<S: AsRef<str>>(
        fake_only: impl IntoIterator<Item = S>,
        true_only: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let fold = |it: &mut dyn Iterator<Item = S>| -> HashSet<String> {
            it.map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect()
        };
        let fake_only = fold(&mut fake_only.into_iter());
        let true_only = fold(&mut true_only.into_iter());
        if let Some(w) = fake_only.intersection(&true_only).next() {
            return Err(Error::Config(format!(
                "`{w}` appears in both domain word lists"
            )));
        }
        Ok(DomainWordLists {
            fake_only,
            true_only,
        })
    }

    pub fn from_lines(fake_only: &str, true_only: &str) -> Result<Self> {
        Self::new(word_lines(fake_only), word_lines(true_only))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainCounts {
    pub fake_only: usize,
    pub true_only: usize,
}

/// Total occurrences of each list's words.
pub fn ncsl_counts(text: &str, lists: &DomainWordLists) -> DomainCounts {
    let mut counts = DomainCounts::default();
    for tok in tokenize_words(text) {
        let t = tok.to_lowercase();
        if lists.fake_only.contains(&t) {
            counts.fake_only += 1;
        } else if lists.true_only.contains(&t) {
            counts.true_only += 1;
        }
    }
    counts
}

/// Number of distinct listed words present.
pub fn ncsl_distinct_counts(text: &str, lists: &DomainWordLists) -> DomainCounts {
    let seen: HashSet<String> = tokenize_words(text)
        .iter()
        .map(|t| t.to_lowercase())
        .collect();
    DomainCounts {
        fake_only: lists.fake_only.iter().filter(|w| seen.contains(*w)).count(),
        true_only: lists.true_only.iter().filter(|w| seen.contains(*w)).count(),
    }
}
