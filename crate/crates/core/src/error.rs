use thiserror::Error;

/// Errors raised by series arithmetic and the solvers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("series is zero to its known precision (order {order})")]
    ZeroSeries { order: i64 },
    #[error("leading coefficient at q^{exponent} is not invertible")]
    NotInvertible { exponent: i64 },
    #[error("{0}")]
    Domain(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = SeriesError> = std::result::Result<T, E>;
