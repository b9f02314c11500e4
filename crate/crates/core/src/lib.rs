//! Credibility analysis of political news: corpus handling, sentiment and
//! content extractors, author-based features, hypothesis tests and
//! cross-validated classifiers.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod ml;
pub mod report;
pub mod resources;
pub mod sentiment;
pub mod sourcefeat;
pub mod stats;
pub mod synth;
pub mod textfeat;

pub use corpus::{Corpus, Dataset, Label, NewsArticle};
pub use error::{Error, Result};
pub use exec::Execution;
