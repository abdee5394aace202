use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library. Indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("{what} {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("entries mix rational and float scalars")]
    MixedScalarKinds,

    #[error("Leibniz expansion limited to n <= {max}, got n = {n}")]
    TooLargeForLeibniz { n: usize, max: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("leading principal minor D_{j} is zero")]
    ZeroLeadingMinor { j: usize },

    #[error("point does not satisfy the cut-{cut} solution maps")]
    InconsistentPoint { cut: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("parse error: {0}")]
    Parse(String),
}
