use std::fmt;

use thiserror::Error;

use crate::diag::Diagnostics;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a decoder gave up. The diagnostics collected up to that point travel
/// with the failure so callers can still print them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// The interpolation system only has the zero solution.
    NoNonzeroSolution,
    /// Every solution found has `F = 0`.
    AllSolutionsZeroF,
    /// Some irreducible factor admits no exponent consistent with every power.
    NoConsistentMu,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoNonzeroSolution => write!(f, "no nonzero solution"),
            Self::AllSolutionsZeroF => write!(f, "all solutions have F = 0"),
            Self::NoConsistentMu => write!(f, "no consistent factor exponent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeFailure {
    pub kind: FailureKind,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus is not irreducible over the prime field")]
    ReducibleModulus,
    #[error("field of size {p}^{b} exceeds the supported range")]
    FieldTooLarge { p: u64, b: u32 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("division by zero")]
    DivideByZero,
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("{m} is not a prime dividing q - 1")]
    BadOrder { m: u64 },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial not allowed here")]
    ConstantPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("no solution found: {0}")]
    NotFound(String),
    #[error("invalid message: {0}")]
    InvalidMessage(String),
    #[error("cannot corrupt {e} positions of a length-{len} word")]
    TooManyErrors { e: usize, len: usize },
    #[error("degree bound {0} must be odd")]
    EvenDegreeD(usize),
    #[error("degree {d} is divisible by the characteristic {p}")]
    DegreeDivisibleByP { d: usize, p: u64 },
    #[error("search space of {0} candidates exceeds the brute-force guard")]
    SearchSpaceTooLarge(u128),
    #[error("parameters violate theorem hypotheses: {0}")]
    TheoremModeViolation(String),
    #[error("decoding failed: {}", .0.kind)]
    Decode(Box<DecodeFailure>),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn decode(kind: FailureKind, diagnostics: Diagnostics) -> Self {
        Error::Decode(Box::new(DecodeFailure { kind, diagnostics }))
    }

    /// The failure kind when this is a decoding failure.
    pub fn failure_kind(&self) -> Option<FailureKind> {
        match self {
            Error::Decode(f) => Some(f.kind),
            _ => None,
        }
    }
}
