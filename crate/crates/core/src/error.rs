//! Error type shared by the whole kernel.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("rank deficient input: vector {index} lies in the span of its predecessors")]
    RankDeficient { index: usize },

    #[error("basis is not orthonormal (residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    #[error("singular matrix (pivot ratio {pivot_ratio:.3e})")]
    Singular { pivot_ratio: f64 },

    #[error("point lies outside the domain: {context}")]
    OutsideDomain { context: &'static str },

    #[error("invalid domain parameters: {reason}")]
    InvalidDomain { reason: String },

    #[error("unbounded representation: {context}")]
    Unbounded { context: &'static str },

    #[error("unsupported representation: {context}")]
    Unsupported { context: &'static str },

    #[error("solver failed to converge: {context}")]
    NonConvergence { context: &'static str },

    #[error("degenerate supporting normal at row {row} (pivot modulus {pivot:.3e})")]
    DegenerateNormal { row: usize, pivot: f64 },

    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for free-form argument validation.
    pub fn invalid(reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            reason: reason.into(),
        }
    }
}
