use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("position {pos} out of range for order {n}")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("degenerate transposition: a == b == {0}")]
    DegenerateTransposition(usize),

    #[error("image {0:?} is not a permutation of 1..={1}")]
    NotAPermutation(Vec<u8>, usize),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(String),

    #[error("probability mode mismatch (exact vs real)")]
    ModeMismatch,

    #[error("not a reduced word of order {n}: {reason}")]
    InvalidWord { n: usize, reason: String },

    #[error("letter {letter} out of range 1..={max} for order {n}")]
    LetterOutOfRange { letter: usize, max: usize, n: usize },

    #[error("illegal move at index {index}: {reason}")]
    IllegalMove { index: usize, reason: String },

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("malformed partition: {0}")]
    BadPartition(String),

    #[error("Bernoulli factorization failed: {0}")]
    FactorizationFailed(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("boundary probability in braid transform (need p, q, r strictly inside (0,1))")]
    BraidBoundary,

    #[error("shuffle is not uniform; operation requires a verified shuffle")]
    NotUniform,

    #[error("document parse error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
