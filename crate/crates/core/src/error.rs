use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not regular")]
    NotRegular,

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("no sign change found for the polynomial in [{lo}, {hi}]")]
    NoRootFound { lo: f64, hi: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition is not equitable")]
    NotEquitable,

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("theorem violation: {0}")]
    Violation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
