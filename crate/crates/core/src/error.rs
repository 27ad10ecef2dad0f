use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlcoveError {
    #[error("invalid root system {label}{rank}: {reason}")]
    InvalidRootSystem {
        label: String,
        rank: usize,
        reason: String,
    },

    #[error("unknown root system type `{0}` (expected one of A, B, C, D, E, F, G)")]
    UnknownType(String),

    #[error("expected a vector of length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("generator letter {letter} out of range 0..={max}")]
    BadLetter { letter: usize, max: usize },

    #[error("simple reflection index {index} out of range 1..={rank}")]
    BadIndex { index: usize, rank: usize },

    #[error("not an alcove: Shi inequality fails for the triple ({alpha}, {beta}, {sum})")]
    NotAlcove {
        alpha: String,
        beta: String,
        sum: String,
    },

    #[error("vector is not admissible: entry {index} = {value} outside 0..={max}")]
    NotAdmissible { index: usize, value: i64, max: i64 },

    #[error(
        "admissible search space has {size} vectors, above the cap of {cap}; \
         sample components from an enumerated ball instead"
    )]
    SearchTooLarge { size: u128, cap: u128 },

    #[error("closed-form classifier unavailable for type {0}; use the Smith normal form route")]
    UnsupportedType(String),

    #[error("the two Shi vectors lie in different components; the modular criterion does not apply")]
    ComponentMismatch,

    #[error("rendering supports rank at most 2, got rank {0}")]
    RankTooLarge(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AlcoveError>;
