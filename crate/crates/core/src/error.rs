use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("root finding did not converge: {0}")]
    Convergence(String),

    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),

    #[error("unsupported boundary for this operation: {0}")]
    UnsupportedBoundary(String),

    #[error("invalid boundary spec: {0}")]
    Spec(String),

    #[error("eigensolver failure: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(format!($($arg)*))
    };
}
pub(crate) use domain_err;
