use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("empty pattern")]
    EmptyPattern,
    #[error("empty word")]
    EmptyWord,
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("horizon {horizon} too small: {reason}")]
    HorizonTooSmall { horizon: usize, reason: String },
    #[error("substitution not prolongable at '{0}'")]
    NotProlongable(String),
    #[error("fixed point finite: iterates of '{0}' stop growing")]
    FixedPointFinite(String),
    #[error("erasing substitution: {0}")]
    ErasingSubstitution(String),
    #[error("block code undefined on factor '{0}'")]
    UndefinedWindow(String),
    #[error("transition undefined from state '{state}' on digit {digit}")]
    UndefinedTransition { state: String, digit: u8 },
    #[error("pattern occurs fewer than 2 times in the scanned prefix")]
    InsufficientOccurrences,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid digits: {0}")]
    InvalidDigits(String),
    #[error("explicit word has only {len} symbols")]
    ExplicitExhausted { len: usize },
    #[error("limit word stays finite: {0}")]
    DegenerateLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
