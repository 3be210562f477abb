use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rational with zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error(
        "series division: divisor valuation {divisor:?} exceeds dividend valuation {dividend:?}"
    )]
    Valuation {
        dividend: Option<usize>,
        divisor: Option<usize>,
    },

    #[error("series division: leading coefficient `{0}` of the divisor is not a nonzero constant")]
    NonInvertibleLead(String),

    #[error("series composition: inner series has nonzero constant term")]
    Composition,

    #[error("{op}: argument has nonzero constant term")]
    Domain { op: &'static str },

    #[error("coefficient index {index} out of range for series of order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),

    #[error("no independent oracle for sequence `{0}`")]
    NoOracle(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
