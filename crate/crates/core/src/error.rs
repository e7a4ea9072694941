use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification of [`Error`], used by front-ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad parameter or configuration; detectable before touching data.
    InvalidInput,
    /// Missing, unreadable, unwritable or malformed files.
    Io,
    /// Frame geometry disagreement.
    Shape,
    /// Metrics need both classes present.
    DegenerateClass,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate weights: all weights are zero")]
    DegenerateWeights,

    #[error("shape mismatch at {location}: {detail}")]
    Shape { location: String, detail: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: cannot decode: {detail}", path.display())]
    Decode { path: PathBuf, detail: String },

    #[error("naming collision: {} would be written twice", path.display())]
    NamingCollision { path: PathBuf },

    #[error("manifest parse error at line {line}, column {column}: {detail}")]
    ManifestParse {
        line: usize,
        column: usize,
        detail: String,
    },

    #[error("duplicate sample id {0:?}")]
    DuplicateId(String),

    #[error("unknown split {value:?}; allowed values: {}", allowed.join(", "))]
    UnknownSplit {
        value: String,
        allowed: Vec<&'static str>,
    },

    #[error("invalid manifest: {0}")]
    InvalidManifest(String),

    #[error("invalid evaluation plan: {0}")]
    InvalidPlan(String),

    #[error("score file line {line}: {detail}")]
    ScoreParse { line: u64, detail: String },

    #[error("degenerate class distribution: {0}")]
    DegenerateClass(String),

    #[error("scores missing for {} sample(s): {}", missing.len(), missing.join(", "))]
    Coverage { missing: Vec<String> },

    #[error("label mismatch for sample {id:?}: manifest says {manifest}, scores say {scores}")]
    LabelMismatch {
        id: String,
        manifest: String,
        scores: String,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::EmptyInput(_)
            | Error::InvalidParameter(_)
            | Error::DegenerateWeights
            | Error::InvalidPlan(_) => ErrorKind::InvalidInput,
            Error::Shape { .. } => ErrorKind::Shape,
            Error::DegenerateClass(_) => ErrorKind::DegenerateClass,
            Error::Io { .. }
            | Error::Decode { .. }
            | Error::NamingCollision { .. }
            | Error::ManifestParse { .. }
            | Error::DuplicateId(_)
            | Error::UnknownSplit { .. }
            | Error::InvalidManifest(_)
            | Error::ScoreParse { .. }
            | Error::Coverage { .. }
            | Error::LabelMismatch { .. } => ErrorKind::Io,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn shape(location: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Shape {
            location: location.into(),
            detail: detail.into(),
        }
    }
}
