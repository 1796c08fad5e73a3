use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid particle subset: {0}")]
    BadSubset(String),

    #[error("coefficients are not normalized: c1^2 + c2^2 = {norm_sq}")]
    BadNorm { norm_sq: f64 },

    #[error("conditioning event has probability {probability:e}, conditional state undefined")]
    ZeroProbability { probability: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no shot matched the selection")]
    EmptySubensemble,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
