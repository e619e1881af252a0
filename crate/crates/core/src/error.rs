use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series must contain at least one value")]
    EmptySeries,

    #[error("series value at index {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("series of length {len} is too short: {needed} values required")]
    TooShort { len: usize, needed: usize },

    #[error("series is constant; correlation is undefined")]
    DegenerateSeries,

    #[error("singular normal equations: {0}")]
    Singular(String),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("{path}: row {row}: {message}")]
    Parse {
        path: String,
        row: usize,
        message: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
