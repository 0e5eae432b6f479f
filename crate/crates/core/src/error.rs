use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("sample needs at least 2 values, got {0}")]
    TooFewValues(usize),

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("order statistic index {index} out of range 1..={n}")]
    Index { index: usize, n: usize },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: cannot parse {token:?} as a number")]
    Parse { line: usize, token: String },

    #[error("column {0:?} not found in CSV header")]
    MissingColumn(String),

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),

    /// Two of the order statistics an estimator reads coincide.
    #[error("tied order statistics: {0}")]
    Tie(String),

    /// `Z_n = 0`, so the root-equation left side stays below 1 for every finite θ.
    #[error("root at infinity: X(n-k+1) equals X(n-k'+1)")]
    RootAtInfinity,

    #[error("no sign change of H(θ) - 1 within |θ| <= {cap}")]
    BracketCap { cap: f64 },

    #[error("degenerate moment estimator: S_k equals the squared Hill estimate")]
    DegenerateMoment,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("the limit law for ξ = -1/2 has no explicit distribution function")]
    UnsupportedLaw,

    #[error("empty input")]
    EmptyInput,
}

impl Error {
    /// True for errors caused by a bad request rather than by the data.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}
