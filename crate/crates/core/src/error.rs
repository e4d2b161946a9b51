//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds tolerance {tol:.3e})")]
    NonHermitian { defect: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("entry count {len} does not match {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    #[error("non-finite entry encountered")]
    NonFinite,

    #[error("magnetic index out of range: two_j={two_j}, two_m={two_m}, two_n={two_n}")]
    MagneticIndexOutOfRange { two_j: i32, two_m: i32, two_n: i32 },

    #[error("magnetic index parity does not match two_j={two_j}")]
    MagneticIndexParity { two_j: i32 },

    #[error("spin magnitude two_j={two_j} exceeds supported maximum {max}")]
    SpinTooLarge { two_j: i32, max: i32 },

    #[error("operation requires {expected:?} representation, got {got:?}")]
    WrongRepKind {
        expected: crate::rep::RepKind,
        got: crate::rep::RepKind,
    },

    #[error("group point for a coset rotation must carry a polar angle theta")]
    MissingTheta,

    #[error("number of copies must be at least 1")]
    InvalidCopies,

    #[error("quadrature order {order} is too small (need at least {min})")]
    QuadratureOrderTooSmall { order: usize, min: usize },

    #[error("linear system is singular or too ill-conditioned (residual {residual:.3e})")]
    SingularSystem { residual: f64 },

    #[error("theta grid yields negative weights (most negative {min_weight:.3e})")]
    NegativeWeights { min_weight: f64 },

    #[error("generator eigenvalues are degenerate (gap {gap:.3e} at index {index})")]
    DegenerateGenerator { gap: f64, index: usize },

    #[error("phase solver failed to reach stationarity (residual {residual:.3e} > {tol:.3e})")]
    StationarityNotMet { residual: f64, tol: f64 },

    #[error("POVM and kernel belong to different representations")]
    RepMismatch,

    #[error("unsupported schema version {found:?} (expected {expected:?})")]
    SchemaVersion { found: String, expected: String },

    #[error("malformed POVM file: {0}")]
    MalformedFile(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
