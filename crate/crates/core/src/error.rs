use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("parameter p = {p} outside [{lo}, {hi}]")]
    ParamOutOfRange { p: f64, lo: f64, hi: f64 },

    #[error("entropy {h} outside [0, ln {n}]")]
    EntropyOutOfRange { h: f64, n: usize },

    #[error("norm {target} outside [{lo}, {hi}]")]
    NormOutOfRange { target: f64, lo: f64, hi: f64 },

    #[error("order 1 gives the constant norm 1; this operation needs an order other than 1")]
    ShannonOrderUnsupported,

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("argument must be positive (got {0})")]
    NonPositiveArgument(f64),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("channel row {row}: {reason}")]
    InvalidChannelRow { row: usize, reason: String },

    #[error("channel is not uniformly focusing")]
    NotFocusing,

    #[error("rho = {0} must be greater than -1")]
    RhoOutOfRange(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("nothing to emit")]
    Empty,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
