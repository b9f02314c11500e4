//! Bundled lexical resources and their on-disk overrides.
//!
//! A resource directory may contain any subset of the files below; absent
//! files fall back to the copies compiled into the crate.
//!
//! | file                    | format                                  |
//! |-------------------------|-----------------------------------------|
//! | `sentiment_lexicon.tsv` | `token<TAB>valence[<TAB>ignored...]`    |
//! | `abbreviations.txt`     | one abbreviation per line, e.g. `dr.`   |
//! | `dictionary.txt`        | one word per line                       |
//! | `ncsl_fake_only.txt`    | one word per line                       |
//! | `ncsl_true_only.txt`    | one word per line                       |

use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sentiment::{Abbreviations, SentimentLexicon};
use crate::textfeat::{Dictionary, DomainWordLists};

pub const LEXICON_FILE: &str = "sentiment_lexicon.tsv";
pub const ABBREVIATIONS_FILE: &str = "abbreviations.txt";
pub const DICTIONARY_FILE: &str = "dictionary.txt";
pub const NCSL_FAKE_FILE: &str = "ncsl_fake_only.txt";
pub const NCSL_TRUE_FILE: &str = "ncsl_true_only.txt";

pub(crate) const BUILTIN_LEXICON: &str = include_str!("../resources/sentiment_lexicon.tsv");
pub(crate) const BUILTIN_ABBREVIATIONS: &str = include_str!("../resources/abbreviations.txt");
pub(crate) const BUILTIN_DICTIONARY: &str = include_str!("../resources/dictionary.txt");
pub(crate) const BUILTIN_NCSL_FAKE: &str = include_str!("../resources/ncsl_fake_only.txt");
pub(crate) const BUILTIN_NCSL_TRUE: &str = include_str!("../resources/ncsl_true_only.txt");

#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: SentimentLexicon,
    pub abbreviations: Abbreviations,
    pub dictionary: Dictionary,
    pub domain_words: DomainWordLists,
}

impl Resources {
    /// The bundled resources, parsed once per process.
    pub fn builtin() -> &'static Resources {
        static BUILTIN: OnceLock<Resources> = OnceLock::new();
        BUILTIN.get_or_init(|| Resources {
            lexicon: SentimentLexicon::builtin().clone(),
            abbreviations: Abbreviations::builtin().clone(),
            dictionary: Dictionary::from_lines(BUILTIN_DICTIONARY),
            domain_words: DomainWordLists::from_lines(BUILTIN_NCSL_FAKE, BUILTIN_NCSL_TRUE)
                .expect("bundled domain word lists are disjoint"),
        })
    }

    /// Loads overrides from `dir`, using the bundled copy for any missing file.
    pub fn from_dir(dir: &Path) -> Result<Resources> {
        if !dir.is_dir() {
            return Err(Error::Config(format!(
                "resource directory {} does not exist",
                dir.display()
            )));
        }
        let read = |name: &str| -> Result<Option<String>> {
            let path = dir.join(name);
            if path.exists() {
                fs::read_to_string(&path)
                    .map(Some)
                    .map_err(|e| Error::io(path, e))
            } else {
                Ok(None)
            }
        };
        let builtin = Resources::builtin();
        let lexicon = match read(LEXICON_FILE)? {
            Some(text) => SentimentLexicon::from_tsv(&text)?,
            None => builtin.lexicon.clone(),
        };
        let abbreviations = match read(ABBREVIATIONS_FILE)? {
            Some(text) => Abbreviations::from_lines(&text),
            None => builtin.abbreviations.clone(),
        };
        let dictionary = match read(DICTIONARY_FILE)? {
            Some(text) => Dictionary::from_lines(&text),
            None => builtin.dictionary.clone(),
        };
        let domain_words = match (read(NCSL_FAKE_FILE)?, read(NCSL_TRUE_FILE)?) {
            (None, None) => builtin.domain_words.clone(),
            (fake, real) => DomainWordLists::from_lines(
                fake.as_deref().unwrap_or(BUILTIN_NCSL_FAKE),
                real.as_deref().unwrap_or(BUILTIN_NCSL_TRUE),
            )?,
        };
        Ok(Resources {
            lexicon,
            abbreviations,
            dictionary,
            domain_words,
        })
    }
}

/// Non-empty, non-comment lines, trimmed.
pub(crate) fn word_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}
