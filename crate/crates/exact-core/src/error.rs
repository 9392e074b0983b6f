use thiserror::Error;

/// Failures of the exact linear algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    BadShape { rows: usize, cols: usize, len: usize },
    #[error("scaled integer representation overflowed 64 bits")]
    Overflow,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
