use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(char),

    #[error("malformed repeat count after '{symbol}': {reason}")]
    MalformedCount { symbol: char, reason: String },

    #[error("rotation index {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("target length {0} is odd; null words have even length")]
    OddLength(usize),

    #[error("word does not represent the identity")]
    NotNull,

    #[error("distance query needs a meet radius beyond the cap of {0} per side")]
    RadiusExhausted(usize),

    #[error("requested {requested} exceeds the configured cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("invalid family spec: k = {k} exceeds n = {n}")]
    InvalidSpec { n: usize, k: usize },

    #[error("generator '{0}' maps to the identity")]
    TrivialImage(char),

    #[error("invalid generator symbol '{0}': symbols are distinct ascii lowercase letters")]
    BadSymbol(char),

    #[error("words belong to different alphabets")]
    AlphabetMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
