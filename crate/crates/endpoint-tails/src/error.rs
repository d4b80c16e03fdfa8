use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no convergence: {what} (estimated error {estimate:e}, tolerance {tol:e})")]
    NonConvergence {
        what: String,
        estimate: f64,
        tol: f64,
    },
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("underflow: {0}")]
    Underflow(String),
    #[error("series radius exceeded: {0}")]
    RadiusExceeded(String),
    #[error("singular linear system: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
