use thiserror::Error;

use crate::algebra::AlgebraViolation;

/// Errors raised by the constructors and drivers of this crate.
///
/// Validation routines (`validate`, `validate_algebra`) never return these;
/// they report violations as data instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is too large (primes must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("scalar {0} is not a valid element of {1}")]
    InvalidScalar(String, String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("matrix index ({row}, {col}) out of bounds for a {rows}x{cols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("truncation mismatch: top levels {0} and {1} differ")]
    TruncationMismatch(usize, usize),
    #[error("malformed simplicial table: {0}")]
    MalformedTable(String),
    #[error("malformed space expression: {0}")]
    MalformedExpr(String),
    #[error("space is not connected")]
    NotConnected,

    #[error("truncated polynomial algebras need m >= 2, got {0}")]
    InvalidTruncation(usize),
    #[error("algebra document does not match the schema: {0}")]
    Schema(String),
    #[error("algebra axiom violated: {0}")]
    AlgebraAxiom(AlgebraViolation),
    #[error("invalid coefficient action: {0}")]
    InvalidAction(String),

    #[error("computing through degree {degree} needs top level >= {needed}, space has {top_level}")]
    TruncationTooShallow {
        degree: usize,
        needed: usize,
        top_level: usize,
    },
    #[error("a weight bound is required for algebras with unbounded weights")]
    WeightBoundRequired,
    #[error("basis in degree {degree}, weight {weight} exceeds the ceiling of {limit} labelings")]
    BasisTooLarge { degree: usize, weight: u32, limit: usize },
    #[error("Kunneth convolution needs homology tables computed with unit coefficients")]
    CoefficientMismatch,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
