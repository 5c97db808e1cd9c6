use thiserror::Error;

use crate::dessin::Diagnostic;

/// Errors from the exact combinatorial layer (tuples, enumeration, words, origamis).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DessinError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid tuple: {0}")]
    InvalidTuple(Diagnostic),
    #[error("invalid origami: {0}")]
    InvalidOrigami(String),
    #[error("(n, d) = ({n}, {d}) exceeds the supported search bound: {reason}")]
    BoundExceeded { n: usize, d: usize, reason: String },
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("endomorphism table does not preserve tuple space: {0}")]
    InvalidResult(Diagnostic),
    #[error("mismatched shapes: {0}")]
    Mismatch(String),
}
