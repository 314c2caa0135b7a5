use thiserror::Error;

use crate::algebra::{AlgebraMode, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator {generator} is not available in {mode} mode")]
    ModeViolation {
        generator: Generator,
        mode: AlgebraMode,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("twisting requires centerless mode")]
    TwistNeedsCenterless,
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
