use std::fmt;

use thiserror::Error;

/// Syntax error in an element, polynomial or rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

/// One broken invariant of a candidate digit system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DegreeTooSmall,
    ZeroConstantCoefficient,
    /// `p_0` is a unit, so `|N| = 1`.
    UnitConstantCoefficient { p0: String },
    DuplicateResidue {
        residue: String,
        first: String,
        second: String,
    },
    WrongDigitCount { expected: String, found: usize },
    MissingResidues { missing: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegreeTooSmall => write!(f, "defining polynomial must have degree >= 1"),
            Violation::ZeroConstantCoefficient => write!(f, "constant coefficient p_0 is zero"),
            Violation::UnitConstantCoefficient { p0 } => write!(
                f,
                "degenerate: |N|=1, constant coefficient p_0 = {p0} is a unit"
            ),
            Violation::DuplicateResidue {
                residue,
                first,
                second,
            } => write!(
                f,
                "digits {first} and {second} share the residue class {residue} mod p_0"
            ),
            Violation::WrongDigitCount { expected, found } => {
                write!(f, "expected {expected} digits (|E/(p_0)|), found {found}")
            }
            Violation::MissingResidues { missing } => {
                write!(f, "residue classes without a digit: {}", missing.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("division by zero")]
    DivisionByZero,
    #[error("E/(0) is infinite")]
    InfiniteQuotient,
    #[error("E/({0}) is trivial: modulus is a unit")]
    DegenerateQuotient(String),
    #[error("elements belong to different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid defining polynomial: {0}")]
    InvalidModulus(String),
    #[error("invalid digit system: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSystem(Vec<Violation>),
    #[error("constant coefficient {0} is not divisible by p_0")]
    NotDivisibleByX(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
