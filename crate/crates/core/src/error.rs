use thiserror::Error;

/// Errors raised by parsing, conversion and rendering.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: &'static str },

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("value is not a number")]
    NotANumber,

    #[error("value is not finite")]
    NotFinite,

    #[error("value is zero")]
    Zero,

    #[error("value is not a normal number")]
    NotNormal,

    #[error("value is not representable in {0}")]
    NotRepresentable(String),

    #[error("lower bound exceeds upper bound")]
    InvertedInterval,

    #[error("invalid float format: {0}")]
    InvalidFormat(&'static str),

    #[error("digit count must be at least 1")]
    ZeroDigits,
}

impl Error {
    /// Syntax errors are malformed input; everything else is a value the
    /// input denotes but that has no meaning for the requested operation.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}
