use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    InvalidUnitary(f64),

    #[error("affine map is singular (|det| = {0:.3e})")]
    SingularAffine(f64),

    /// The operation needs a body of a different dimension, e.g. the 3D
    /// face scan was called on a flat range.
    #[error("wrong dimension: operation requires dim {required}, body has dim {actual}")]
    WrongDimension { required: usize, actual: usize },

    /// A numerical result violated a structural theorem; this signals a
    /// tolerance failure and is never silently turned into a label.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("empty request: {0}")]
    EmptyRequest(String),

    /// Fewer than four affinely independent points; carries the affine rank.
    #[error("degenerate hull: point cloud has affine rank {0}")]
    DegenerateHull(usize),

    /// The request is well formed but outside what the operation handles.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
