use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite entry encountered")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian: relative asymmetry {defect:.3e} exceeds {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.6e} below the -{tol:.3e} clamp window")]
    NotPsd { eigenvalue: f64, tol: f64 },
    #[error("matrix tuple must contain at least one matrix")]
    EmptyTuple,
    #[error("every member of the tuple is zero, the ratio is undefined")]
    AllZeroTuple,
    #[error("operator norm {norm} exceeds the contraction tolerance")]
    NotContraction { norm: f64 },
    #[error("input sequence is not sorted nonincreasing at position {0}")]
    UnsortedInput(usize),
    #[error("negative entry {value:.6e} at position {index}, nonnegative input required")]
    NegativeEntry { index: usize, value: f64 },
    #[error("overlap parameter s = {0} outside [0, 1]")]
    SOutOfRange(f64),
    #[error("Schatten exponent must satisfy p >= 1, got {0}")]
    PBelowOne(f64),
    #[error("exponent p = {0} must be strictly greater than 1 for the root equation")]
    PTooSmall(f64),
    #[error("iteration failed to converge: {0}")]
    NoConvergence(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
