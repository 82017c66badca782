use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("validation failed ({identity}) at {indices}: residual {residual}")]
    Validation {
        identity: String,
        indices: String,
        residual: String,
    },

    #[error("weight has {got} labels, algebra rank is {expected}")]
    WeightDimension { expected: usize, got: usize },

    #[error("field ({mu}, {nu}) excluded by selection rule")]
    SelectionRule { mu: i64, nu: i64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("commutator undefined in coset mode: {0}")]
    CosetModeCommutator(String),

    #[error("level budget exceeded: descendant of level {level} (max {max})")]
    LevelBudget { level: i64, max: i64 },

    #[error("mode index {0} outside the supported range |n| <= 2")]
    ModeRange(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not a martingale candidate: {0}")]
    NotMartingale(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("path leaves the closed upper half-plane at sample {index}")]
    PathLeavesHalfPlane { index: usize },

    #[error("too many non-finite samples: {bad} of {total}")]
    NonFinite { bad: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
