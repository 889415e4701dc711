//! Error type shared by all modules.
//!
//! Programmer errors (violated preconditions that indicate a bug in the
//! caller, such as inverting a series with zero leading coefficient after an
//! explicit check) panic via `assert!`; everything a caller can legitimately
//! hit with well-typed input is reported through [`Error`].

use thiserror::Error;

/// Errors produced by parsing, loading, and the checked operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A series operation needed a nonzero coefficient at the lowest exponent.
    #[error("non-invertible leading coefficient: {0}")]
    NonInvertibleLeading(String),
    /// A check needed more terms than the operands carry.
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    /// Text in the eta-quotient / frame-shape grammar could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A frame shape violated a structural invariant (rank, divisibility, …).
    #[error("invalid frame shape: {0}")]
    InvalidFrame(String),
    /// An eta quotient violated a precondition of the requested operation.
    #[error("invalid eta quotient: {0}")]
    InvalidEta(String),
    /// A Gram matrix was rejected (shape, symmetry, parity, or singularity).
    #[error("invalid gram matrix: {0}")]
    InvalidGram(String),
    /// A pair-function table was queried at a pair it does not define.
    #[error("missing table entry at twist {twist:?}, insertion {insertion:?}")]
    MissingTableEntry {
        /// Twist component of the queried pair.
        twist: (u64, u64),
        /// Insertion component of the queried pair.
        insertion: (u64, u64),
    },
    /// A coefficient that must be an integer by construction was not.
    #[error("non-integer coefficient where an integer was required: {0}")]
    NonIntegerCoefficient(String),
    /// The embedded catalog data failed its checksum or structural validation.
    #[error("corrupt catalog data: {0}")]
    CorruptCatalog(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
