use thiserror::Error;

/// Errors raised by the library. Identity-check failures are not errors; they
/// are recorded in a [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain on which the formula is stated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation that must be integral produced a fraction. This points
    /// at a convention bug, never at bad user input.
    #[error("internal error: {formula} produced non-integral value {value}")]
    NonIntegral {
        formula: &'static str,
        value: String,
    },

    #[error("series division by a series that is zero to order {0}")]
    ZeroDivisor(usize),

    #[error("quotient is not a power series: divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    NegativeValuation { divisor: usize, dividend: usize },

    #[error("composition requires an inner series with zero constant term")]
    NonzeroConstantTerm,

    #[error(
        "checksum mismatch at n = {n}, p = {p}: {formula} gave {got}, {reference} gave {expected}"
    )]
    ChecksumMismatch {
        n: u64,
        p: u32,
        formula: String,
        got: String,
        reference: String,
        expected: String,
    },

    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty input")]
    Empty,
    #[error("invalid character in {0:?}; expected [+-]digits[/digits]")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
