use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between reading a corpus and printing a table.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("corpus path not found: {0}")]
    CorpusNotFound(PathBuf),

    #[error("duplicate document id {0}")]
    DuplicateId(String),

    #[error("document {0} has an empty body")]
    EmptyBody(String),

    #[error("invalid document id {0:?}: expected up to 4 decimal digits")]
    InvalidDocId(String),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("index format version mismatch: found {found}, expected {expected}")]
    VersionMismatch { found: String, expected: String },

    #[error("pipeline configuration mismatch: index built with {indexed}, query uses {current}")]
    PipelineMismatch { indexed: String, current: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("NoSourceArticle: no source-language article found for {0:?}")]
    NoSourceArticle(String),

    #[error("NoTargetArticle: {source_title:?} has no {target_lang} interlanguage link")]
    NoTargetArticle {
        source_title: String,
        target_lang: String,
    },

    #[error("EmptyExtract: article {0:?} has no text")]
    EmptyExtract(String),

    #[error("NetworkFailure: {0}")]
    NetworkFailure(String),

    #[error("UnrecordedRequest: no fixture for {0}")]
    UnrecordedRequest(String),

    #[error("unexpected response from {url}: {message}")]
    BadResponse { url: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-friendly name of the variant, used in CLI messages and
    /// evaluation reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "Io",
            Error::CorpusNotFound(_) => "CorpusNotFound",
            Error::DuplicateId(_) => "DuplicateId",
            Error::EmptyBody(_) => "EmptyBody",
            Error::InvalidDocId(_) => "InvalidDocId",
            Error::EmptyCorpus => "EmptyCorpus",
            Error::Parse { .. } => "Parse",
            Error::VersionMismatch { .. } => "VersionMismatch",
            Error::PipelineMismatch { .. } => "PipelineMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NoSourceArticle(_) => "NoSourceArticle",
            Error::NoTargetArticle { .. } => "NoTargetArticle",
            Error::EmptyExtract(_) => "EmptyExtract",
            Error::NetworkFailure(_) => "NetworkFailure",
            Error::UnrecordedRequest(_) => "UnrecordedRequest",
            Error::BadResponse { .. } => "BadResponse",
        }
    }

    /// True for failures of a query channel to produce a target-language text
    /// (as opposed to bad input or transport problems).
    pub fn is_resolution(&self) -> bool {
        matches!(
            self,
            Error::NoSourceArticle(_) | Error::NoTargetArticle { .. } | Error::EmptyExtract(_)
        )
    }

    pub fn is_network(&self) -> bool {
        matches!(
            self,
            Error::NetworkFailure(_) | Error::UnrecordedRequest(_) | Error::BadResponse { .. }
        )
    }
}
