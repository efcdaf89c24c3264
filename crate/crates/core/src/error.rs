use thiserror::Error;

use crate::exactpoly::RingDesc;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingDesc, RingDesc),
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("subscript {subscript} out of range 1..={triples}")]
    SubscriptOutOfRange { subscript: u64, triples: u32 },
    #[error("expected a {expected} ring, got {got}")]
    WrongRingKind { expected: &'static str, got: RingDesc },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("length mismatch: word has {word} steps but {subscripts} subscripts were given")]
    LengthMismatch { word: usize, subscripts: usize },
    #[error("bad index set {indices:?}: {reason}")]
    BadIndices { indices: Vec<u32>, reason: &'static str },
    #[error("not a path monomial: {0}")]
    NotAPathMonomial(String),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("not in the kernel of Delta; witness term of Delta(h): {witness}")]
    NotAConstant { witness: String },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}
