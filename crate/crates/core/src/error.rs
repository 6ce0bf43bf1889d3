//! Shared error type for the whole library.

use thiserror::Error;

use crate::lattice::LatticeVector;

/// Errors reported by the library.
///
/// The CLI maps these onto exit codes: `Parse` is a malformed input,
/// `Overflow` is an arithmetic failure, and the remaining variants are
/// precondition or domain violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A textual input (type literal, polynomial, map, point) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Integer arithmetic overflowed. Never wrapped silently.
    #[error("integer overflow")]
    Overflow,

    /// The degree/multiplicity data violate the Noether equalities.
    #[error("not a homaloidal type: {0}")]
    NotHomaloidal(String),

    /// A multiplicity is negative, which no homaloidal type admits.
    #[error("negative multiplicity {0}")]
    NegativeMultiplicity(i64),

    /// The degree is not a positive integer.
    #[error("invalid degree {0}")]
    InvalidDegree(i64),

    /// An operation requiring a proper type was called on an improper one.
    /// Carries the witness vector produced by the reduction.
    #[error("improper homaloidal type (witness {0})")]
    Improper(LatticeVector),

    /// A family constructor or search was called outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested degree exceeds the enumeration horizon.
    #[error("degree {requested} exceeds the enumeration horizon {max}")]
    Horizon { requested: i64, max: i64 },

    /// An operation precondition was violated (reduced map expected, bad
    /// point, coincident points, and so on).
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
