use thiserror::Error;

use crate::tour::TourViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("parse error: {0}")]
    Format(String),

    #[error("tour has {tour} cities but instance has {instance}")]
    DimensionMismatch { tour: usize, instance: usize },

    #[error("parents have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid tour: {0}")]
    InvalidTour(TourViolation),

    #[error("invalid cut points {start}..={end} for length {len}")]
    InvalidCuts {
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("instance has {n} cities, exceeding the exhaustive search cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
