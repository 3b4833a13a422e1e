use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol {symbol:?} at position {position}; words are strings over '0' and '1'")]
    InvalidSymbol { symbol: char, position: usize },

    #[error("word length {0} exceeds the supported maximum of {max}", max = crate::sequences::MAX_LEN)]
    TooLong(usize),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("inputs must be distinct words")]
    EqualInputs,

    #[error("operation requires a non-empty word")]
    EmptyWord,

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("unsupported VT syndrome order {0} (only 1 and 2 are supported)")]
    UnsupportedOrder(u32),

    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("enumeration of length {n} exceeds the limit {limit}")]
    EnumerationLimit { n: usize, limit: usize },

    #[error("word is not in the intersection of the two balls")]
    NotInIntersection,

    #[error("ball has only {ball} elements, {requested} distinct reads requested")]
    BallTooSmall { ball: usize, requested: usize },

    #[error("code is empty; redundancy is undefined")]
    EmptyCode,

    #[error("structural characterization failed for pair ({x}, {y}): {reason}")]
    ShapeMismatch {
        x: String,
        y: String,
        reason: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
