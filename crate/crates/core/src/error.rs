//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the denoising library.
#[derive(Debug, Error)]
pub enum Error {
    /// Image dimensions are too small for the periodic difference operators,
    /// or a file declared a zero dimension.
    #[error("invalid image dimensions {height}x{width}: {reason}")]
    InvalidDimensions {
        height: usize,
        width: usize,
        reason: &'static str,
    },

    /// Two planes that must share a shape do not.
    #[error("shape mismatch: expected {expected:?}, got {actual:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    /// A pixel value or intermediate quantity is NaN or infinite.
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    /// The solver produced a non-finite iterate.
    #[error("solver produced non-finite values at iteration {iteration}")]
    NonFiniteIterate { iteration: usize },

    /// A hyperparameter is outside its valid range.
    #[error("invalid parameter {name}: {value} ({requirement})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// File could not be read or written.
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// File is not a format this crate reads (PGM P2/P5 or 8/16-bit grayscale PNG).
    #[error("unsupported image format for {path}: {detail}")]
    UnsupportedFormat { path: String, detail: String },

    /// File claims a supported format but its contents are inconsistent.
    #[error("malformed image file {path}: {detail}")]
    MalformedFile { path: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
