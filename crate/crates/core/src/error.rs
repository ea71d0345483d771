use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix data of length {len} is not square")]
    NotSquare { len: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not diagonal (off-diagonal norm {offdiag:e} exceeds {tolerance:e})")]
    NotDiagonal { offdiag: f64, tolerance: f64 },

    #[error("matrix is not Hermitian (‖H − H†‖ = {defect:e} exceeds {tolerance:e})")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("matrix has a nonzero diagonal (norm {norm:e})")]
    NonZeroDiagonal { norm: f64 },

    #[error("invalid time interval: t = {t} precedes t0 = {t0}")]
    InvalidInterval { t0: f64, t: f64 },

    #[error("index {index} out of range for bound {bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("time grids differ")]
    GridMismatch,

    #[error("eigendecomposition failed to converge")]
    Eigensolver,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
