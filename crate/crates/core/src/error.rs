use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("standard factorization requested for a single-letter word")]
    AtomicWord,
    #[error("operands live over different alphabets")]
    AlphabetMismatch,
    #[error("polynomial is not a Lie polynomial: residual word `{0}` survives elimination")]
    NotALiePolynomial(String),
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("mixed degrees: expected {expected}, found {found}")]
    MixedDegrees { expected: u32, found: u32 },
    #[error("expected a one-dimensional space in degree {degree}, found dimension {dim}")]
    NotOneDimensional { degree: u32, dim: usize },
    #[error("leading coefficient on ad(x)^{0}(y) vanishes")]
    DegenerateLeadingTerm(u32),
    #[error("nilpotency class mismatch: {0} vs {1}")]
    ClassMismatch(u32, u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
