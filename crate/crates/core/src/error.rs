use thiserror::Error;

/// Errors raised by the library. Mathematical outcomes (index 2, failed
/// searches, audit findings) are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("{value} is not a unit modulo {n}")]
    NotAUnit { value: u64, n: u64 },

    #[error("term {term} is not a nonzero residue modulo {n} (expected 1..={max})", max = n - 1)]
    TermOutOfRange { term: u64, n: u64 },

    #[error("sequence must have at least one term")]
    EmptySequence,

    #[error("expected a sequence of length {expected}, got {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("sequence is not zero-sum")]
    NotZeroSum,

    #[error("sequence is not a minimal zero-sum sequence")]
    NotMinimal,

    #[error("invalid normalized quadruple: {0}")]
    InvalidQuadruple(String),

    #[error("precondition not met: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
