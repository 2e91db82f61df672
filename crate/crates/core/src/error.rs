use thiserror::Error;

/// Errors raised by model construction, the engine and configuration parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },

    #[error("group order exceeds cap {cap} (generator of infinite order?)")]
    OrderCapExceeded { cap: usize },

    #[error("generator {index} is not square ({rows}x{cols})")]
    NonSquareGenerator {
        index: usize,
        rows: usize,
        cols: usize,
    },

    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("point is not in the loop space")]
    NotInLoopSpace,

    #[error("element does not belong to the group")]
    NotAMember,

    #[error("class component dimension {dim} exceeds the supported arrangement dimension {cap}")]
    UnsupportedBulletDimension { dim: usize, cap: usize },

    #[error("rotation by {0} turns is not representable over the rationals")]
    InexactRotation(String),

    #[error("generic witness search exhausted for flat of dimension {dim}")]
    WitnessSearchExhausted { dim: usize },

    #[error("non-composable pair: source {source_point} differs from target {target_point}")]
    NonComposable {
        source_point: String,
        target_point: String,
    },

    #[error("sample budget {budget} exceeded")]
    SampleBudgetExceeded { budget: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
