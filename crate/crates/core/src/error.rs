use std::fmt;

use thiserror::Error;

/// A parse failure, positioned at a 1-based character offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl SyntaxError {
    pub fn new(position: usize, expected: &[&str], found: impl Into<String>) -> Self {
        SyntaxError {
            position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: ", self.position)?;
        match self.expected.len() {
            0 => {}
            1 => write!(f, "expected {}, ", self.expected[0])?,
            _ => write!(f, "expected one of {}, ", self.expected.join(", "))?,
        }
        write!(f, "found {}", self.found)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("finite-function target set is empty")]
    EmptyTarget,

    #[error("complexity bound exceeded: {needed} operations needed, bound is {bound}")]
    ComplexityExceeded { needed: String, bound: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("value contains the unit b, which has no finite-level model")]
    BetaNotEvaluable,

    #[error("exponent {exponent} of a is not integral at level {level}")]
    ExponentNotIntegralAtLevel { exponent: String, level: u32 },

    #[error("value is not representable: {0}")]
    NotRepresentable(String),

    #[error("level {0} is outside the supported range 1..={max}", max = crate::label_net::MAX_LEVEL)]
    LevelOutOfRange(u32),

    #[error("ordinal result would not stay below epsilon-zero")]
    ResultAboveEpsilon0,

    #[error("ordinal is too large to compute: {0}")]
    OrdinalTooLarge(String),

    #[error("embedding needs finite exponents, found exponent {0}")]
    ExponentNotFinite(String),

    #[error("ordinal {ordinal} is not below theta_{next}")]
    ArgumentNotBelowThetaJPlus1 { ordinal: String, next: u32 },

    #[error("invalid measure unit: {0}")]
    InvalidUnit(String),
}

impl Error {
    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
