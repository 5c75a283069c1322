//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by encoding, fitting, resampling, and pipeline stages.
#[derive(Debug, Error)]
pub enum Error {
    /// A state vector's Euclidean norm deviates from 1 beyond tolerance.
    #[error("state vector norm deviates from 1 by {deviation:.3e}")]
    InvalidState { deviation: f64 },

    /// A tensor power would exceed the configured dimension cap.
    #[error("tensor power side {requested} exceeds the dimension cap {cap}")]
    DimensionOverflow { requested: usize, cap: usize },

    /// A class index in 0..n_classes has no samples.
    #[error("class {class} has no samples")]
    EmptyClass { class: usize },

    /// A matrix expected to be PSD has a significantly negative eigenvalue.
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    /// Input dimension does not match what a fitted model expects.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Helstrom measurement is defined for exactly two classes.
    #[error("Helstrom measurement requires exactly 2 classes, got {classes}")]
    NotBinary { classes: usize },

    /// k-NN resampling needs strictly more minority samples than neighbors.
    #[error("k-NN resampling needs more than {k} minority samples, got {count}")]
    InsufficientMinority { count: usize, k: usize },

    /// Fidelity similarity is undefined for zero-norm vectors.
    #[error("zero-norm vector passed to fidelity similarity")]
    ZeroVector,

    /// Training a binary classifier requires both classes present.
    #[error("training data contains a single class")]
    SingleClass,

    /// An expected column is absent or has the wrong shape.
    #[error("schema error: {0}")]
    Schema(String),

    /// A CSV cell or row could not be interpreted.
    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    /// A class is too small to stratify into the requested folds.
    #[error("class {class} has {count} samples, fewer than {n_splits} folds")]
    Stratify {
        class: usize,
        count: usize,
        n_splits: usize,
    },

    /// Requested component count or shape is impossible for the data.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A serialized model file has an unknown header or version.
    #[error("model format: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
