//! Crate-wide error type.
//!
//! Two broad classes matter to callers: input-domain errors (bad arguments,
//! malformed data) and environment errors (missing files, missing
//! credentials, unreachable services). The CLI maps them to exit codes 1
//! and 2 respectively.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter or input value is outside the supported domain.
    #[error("{0}")]
    InvalidInput(String),

    /// Two inputs that must share a pixel grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// IoU of two empty masks is undefined.
    #[error("IoU is undefined when both masks are empty")]
    EmptyIou,

    /// An operation that needs foreground pixels got an empty mask.
    #[error("mask '{0}' has no foreground pixels")]
    EmptyMask(String),

    /// Mask pixels are spread so evenly around the circle that no mean
    /// longitude exists.
    #[error("centroid is undefined: mean longitude vector has near-zero length")]
    DegenerateCentroid,

    /// The judge endpoint could not be reached or kept failing after the
    /// configured retries.
    #[error("judge unavailable: {0}")]
    JudgeUnavailable(String),

    /// The mock judge received a question that does not match the template.
    #[error("question does not match the judge template: {0}")]
    TemplateMismatch(String),

    /// Missing files, unreadable paths, missing environment variables.
    #[error("environment: {0}")]
    Environment(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("image error on {path}: {source}")]
    Image {
        path: PathBuf,
        source: image::ImageError,
    },

    #[error("json error in {context}: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: 1 for input-domain errors, 2 for
    /// environment errors. A missing or unreadable image file is an
    /// environment problem; an image whose contents will not decode is
    /// input-domain.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Environment(_) | Error::Io { .. } | Error::JudgeUnavailable(_) => 2,
            Error::Image {
                source: image::ImageError::IoError(_),
                ..
            } => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn image(path: impl Into<PathBuf>, source: image::ImageError) -> Self {
        Error::Image {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json {
            context: context.into(),
            source,
        }
    }
}
