use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    /// The condition estimate is the ratio of the largest to the smallest
    /// Cholesky pivot of the Gram matrix (`f64::INFINITY` when factoring failed).
    #[error("matrix is numerically singular (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("unsupported regime: n = {n} rows exceeds p = {p} columns")]
    UnsupportedRegime { n: usize, p: usize },

    #[error("model assumption violated: {0}")]
    ModelAssumption(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("sweep cell p = {p}, rep = {rep}, seed = {seed} failed: {source}")]
    Cell {
        p: usize,
        rep: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
