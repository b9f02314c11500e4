use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("record {record}: field `{field}`: {message}")]
    Parse {
        record: String,
        field: String,
        message: String,
    },

    #[error("duplicate article id `{0}`")]
    DuplicateId(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("history leakage: article `{0}` is present in its own reference set")]
    Leakage(String),

    #[error("sample size {given} outside supported range {min}..={max}")]
    SampleSize {
        given: usize,
        min: usize,
        max: usize,
    },

    #[error("constant sample: statistic undefined")]
    ConstantSample,

    #[error("correlation undefined: zero variance")]
    UndefinedCorrelation,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("training error: {0}")]
    Training(String),

    #[error("non-finite value in feature `{feature}` (row {row})")]
    NonFinite { feature: String, row: usize },

    #[error("feature schema mismatch: missing {missing:?}, extra {extra:?}")]
    Schema {
        missing: Vec<String>,
        extra: Vec<String>,
    },

    #[error("cannot build {k} folds: class `{class}` has only {count} articles")]
    Folds {
        k: usize,
        class: String,
        count: usize,
    },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(
        record: impl Into<String>,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Parse {
            record: record.into(),
            field: field.into(),
            message: message.into(),
        }
    }
}
