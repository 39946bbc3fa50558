use thiserror::Error;

/// Errors produced anywhere in the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("matrix is not unitary: deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotUnitary { deviation: f64, tolerance: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("eigensolver failed on {n}x{n} matrix (max |entry| {max_abs:e})")]
    Eigensolver { n: usize, max_abs: f64 },

    #[error("chordal LP needs {atoms} atoms but the cap is {cap}; use the sandwich cost instead")]
    AtomCapExceeded { atoms: usize, cap: usize },

    #[error("quantile function is not monotone near p = {0}")]
    InvalidQuantile(f64),

    #[error("invalid order k = {0}: must be at least 1")]
    InvalidOrder(usize),

    #[error("precision loss evaluating moment k = {k}, t = {t}: achieved relative error bound {bound:e}")]
    PrecisionLoss { k: usize, t: f64, bound: f64 },

    #[error("value {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
