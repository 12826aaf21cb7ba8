//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the exact engines.
///
/// `Undecidable` is a first-class outcome, not a failure: operations that are
/// undecidable outside the catalogued carrier families report it explicitly
/// instead of guessing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The given modulus is not prime.
    NotPrime(u64),
    /// Input violates a documented precondition.
    Rejected(String),
    /// The polynomials do not generate the unit ideal.
    NoBezout,
    /// Division by zero in an exact domain.
    DivisionByZero,
    /// Evaluation hit a vanishing denominator.
    Pole(String),
    /// Mixed-modulus arithmetic on residue polynomials.
    ModulusMismatch { left: u64, right: u64 },
    /// The question lies outside the decidable carrier fragment.
    Undecidable(String),
    /// The generators do not form an open ideal.
    NotOpen(String),
    /// The elements do not cover the adic spectrum.
    NotACover(String),
    /// The pieces disagree on an overlap.
    NotACocycle(String),
    /// No catalogued valuation realizes the requested point.
    Unrepresentable(String),
    /// Text input outside the documented grammar.
    Parse { pos: usize, msg: String },
    /// A certified-impossible equality held; falsifiability hook.
    Surprise(String),
    /// Invariant breakage inside the engine itself.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::Rejected(msg) => write!(f, "rejected input: {msg}"),
            Error::NoBezout => write!(f, "no Bezout relation: gcd is not a nonzero constant"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Pole(msg) => write!(f, "zero denominator: {msg}"),
            Error::ModulusMismatch { left, right } => {
                write!(f, "mixed moduli: {left} vs {right}")
            }
            Error::Undecidable(msg) => write!(f, "undecidable for this carrier: {msg}"),
            Error::NotOpen(msg) => write!(f, "not an open ideal: {msg}"),
            Error::NotACover(msg) => write!(f, "not a cover: {msg}"),
            Error::NotACocycle(msg) => write!(f, "not a cocycle: {msg}"),
            Error::Unrepresentable(msg) => write!(f, "unrepresentable point: {msg}"),
            Error::Parse { pos, msg } => write!(f, "parse error at column {pos}: {msg}"),
            Error::Surprise(msg) => write!(f, "SURPRISE (would falsify a certificate): {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
