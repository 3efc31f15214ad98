use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Number literal was empty (or had no digits after a `0x` prefix).
    #[error("empty number literal")]
    EmptyLiteral,
    /// Number literal contained a character that is not a digit of its base.
    #[error("invalid digit {ch:?} at position {pos}")]
    InvalidDigit { pos: usize, ch: char },
    #[error("division by zero")]
    DivisionByZero,
    /// `a - m*b` requested with `m*b > a`.
    #[error("subtraction underflow: multiple exceeds minuend")]
    Underflow,
    /// A denominator that must be odd (and nonzero) was even or zero.
    #[error("denominator must be odd and positive")]
    EvenDenominator,
    /// GCD reduction requires strictly positive inputs.
    #[error("input must be positive")]
    ZeroInput,
    /// A state with both residues even cannot occur in a valid run.
    #[error("invalid state: both residues even")]
    InvalidState,
    /// The brute-force oracle only accepts odd denominators up to 10^6.
    #[error("oracle denominator out of range")]
    OracleRange,
}
