use schwarz_core::SeriesError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("invalid lattice: {0}")]
    Lattice(String),
    #[error("elements live on different lattices")]
    LatticeMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: i64, found: i64 },
    #[error("odd degree {0} is not supported")]
    OddDegree(i64),
    #[error("support box overflow at filtration level {level}")]
    SupportOverflow { level: i64 },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid derivation data: {0}")]
    Derivation(String),
    #[error("no lattice class of level 0 and degree {degree} within the search box")]
    NoDegreeShift { degree: i64 },
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T, E = NovikovError> = std::result::Result<T, E>;
