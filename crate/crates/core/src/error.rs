use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument {value} outside the domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite sample at index {index} ({what})")]
    NonFinite { index: usize, what: &'static str },

    #[error("series for {what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("{what}: cancellation by a factor {factor:e} would leave too few correct digits")]
    PrecisionLoss { what: &'static str, factor: f64 },

    #[error("no sign change of the objective on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("inverse iteration failed to converge for eigenpair index {0}")]
    InverseIteration(usize),

    #[error("cannot normalize a function with zero norm")]
    ZeroNorm,

    #[error("zero mode has no SUSY partner (energy = {0})")]
    ZeroMode(f64),

    #[error("invalid quantum level: {0}")]
    InvalidLevel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
