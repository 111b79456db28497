use thiserror::Error;

use crate::imageio::PnmError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("plane {width}x{height} expects {expected} samples, got {got}")]
    SampleCount {
        width: usize,
        height: usize,
        expected: usize,
        got: usize,
    },

    #[error("plane dimensions must be at least 1x1, got {width}x{height}")]
    EmptyPlane { width: usize, height: usize },

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("dimension mismatch: {left_w}x{left_h} vs {right_w}x{right_h}")]
    DimensionMismatch {
        left_w: usize,
        left_h: usize,
        right_w: usize,
        right_h: usize,
    },

    #[error("mosaic requires even dimensions, got {width}x{height}")]
    OddDimensions { width: usize, height: usize },

    #[error("{width}x{height} is not divisible by 2^{levels} for a {levels}-level transform")]
    Indivisible {
        width: usize,
        height: usize,
        levels: usize,
    },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("inconsistent configuration: {0}")]
    Config(String),

    #[error("experiment run failed for image `{image}` at grid point {index}: {source}")]
    GridPoint {
        image: String,
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Pnm(#[from] PnmError),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
