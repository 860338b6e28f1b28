use thiserror::Error;

/// Errors raised by the fibration, section and connection operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    #[error("interest rate {0} must be greater than -1")]
    InvalidRate(f64),

    #[error("function evaluation failed at {at}: got {value}")]
    Evaluation { at: f64, value: f64 },

    #[error("result out of floating-point range")]
    Range,

    #[error("invalid law: factor {value} at {at} is not positive")]
    InvalidLaw { at: f64, value: f64 },

    #[error("{value} lies outside the domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },

    #[error("fibers at rates {0} and {1} are not comparable")]
    Incomparable(f64, f64),

    #[error("event at time {event} does not lie on the fiber over time {fiber}")]
    FiberMismatch { fiber: f64, event: f64 },

    #[error("not applicable: {0}")]
    Inapplicable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
