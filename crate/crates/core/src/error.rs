use thiserror::Error;

/// Errors raised by mesh construction, assembly, solvers and experiments.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid barycentric coordinates ({0}, {1}, {2})")]
    InvalidBarycentric(f64, f64, f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{kind} format error at line {line}: {message}")]
    Format { kind: &'static str, line: usize, message: String },

    #[error("iterative solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("matrix is not symmetric (relative asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("eigenvalue iteration failed to converge ({0})")]
    EigenFailure(String),

    #[error("coefficient function of degree {0} is not supported (maximum 1)")]
    UnsupportedDegree(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
