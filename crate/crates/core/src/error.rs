use thiserror::Error;

/// Errors raised by the exact-arithmetic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {0:?} as an exact scalar")]
    Parse(String),

    #[error("degree caps differ: {left:?} vs {right:?}")]
    CapMismatch { left: Vec<u32>, right: Vec<u32> },

    #[error("exponent {exponent} of variable {var} exceeds its cap {cap}")]
    ExponentBeyondCap { var: usize, exponent: u32, cap: u32 },

    #[error("no pole of w{var} at the requested point")]
    NoPole { var: usize },

    #[error(
        "{count} denominator factors vanish at the requested point of w{var} (pole is not simple)"
    )]
    HigherOrderPole { var: usize, count: usize },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
