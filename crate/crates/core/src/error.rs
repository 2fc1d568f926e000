use thiserror::Error;

/// Errors raised by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed input {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("digit {digit} is outside the alphabet {alphabet}")]
    DigitOutOfRange { digit: i64, alphabet: String },

    #[error("invalid base parameter n = {0} (need n >= 2)")]
    InvalidBase(i64),

    #[error("digit set must be nonempty")]
    EmptyDigitSet,

    #[error("eventually periodic sequence needs a nonempty cycle")]
    EmptyCycle,

    #[error("translation digit {digit} is not in D - D")]
    InvalidTranslationDigit { digit: i64 },

    #[error("hypotheses violated: {}", .0.join("; "))]
    Hypothesis(Vec<String>),

    #[error("translation has more than one expansion over {alphabet}")]
    NonUniqueExpansion { alphabet: String },

    #[error("shift digit {digit} at position {position} is not admissible")]
    InadmissibleShift { position: usize, digit: i64 },

    #[error("tiles have different base or depth")]
    TileMismatch,

    #[error("lambda {0} is outside [0, 1]")]
    LambdaOutOfRange(String),

    #[error("slot {slot}: |A + U| != |A||U|, dimension withheld")]
    NonUniqueDecomposition { slot: usize },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
