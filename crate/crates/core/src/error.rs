use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },

    #[error("{rows}x{cols} matrix needs {expected} entries, got {found}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("orthonormal basis already spans the whole space")]
    FullBasis,

    #[error("no usable direction in the complement after {attempts} draws")]
    ExhaustedRetries { attempts: usize },

    #[error("n = {n} exceeds the exhaustive-search cap of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("k = {k} outside 1..={max}")]
    BadK { k: usize, max: usize },

    #[error("matrix is identically zero")]
    ZeroMatrix,

    #[error("partial coloring has no live coordinates")]
    NoLiveCoordinates,

    #[error("partial coloring stalled at iteration {iteration}: no coordinate can be frozen")]
    NumericalStall { iteration: usize },

    #[error("partial coloring failed {attempts} consecutive times")]
    RetryLimit { attempts: usize },

    #[error("edge-walk round {round} failed {attempts} times")]
    RoundFailed { round: usize, attempts: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("row {row} has {found} fields, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
}
