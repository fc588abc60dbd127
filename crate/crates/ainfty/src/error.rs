use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AinftyError {
    #[error("basis index {index} out of range for a basis of size {size}")]
    Index { index: usize, size: usize },
    #[error("entry {inputs:?} -> {output} has degree {found}, expected {expected}")]
    Degree { inputs: Vec<usize>, output: usize, expected: i64, found: i64 },
    #[error("arity {arity} exceeds the cap {cap}")]
    Arity { arity: usize, cap: usize },
    #[error("mismatched bases")]
    BasisMismatch,
    #[error("cochain degree {found}, expected {expected}")]
    CochainDegree { expected: i64, found: i64 },
    #[error("no strict unit")]
    NoUnit,
    #[error("cochain does not vanish with the unit in one of the last {0} slots")]
    NotInFiltration(usize),
    #[error("curvature term not allowed here: {0}")]
    Curved(String),
    #[error("cochain must vanish at q^0")]
    QOrderZero,
    #[error("linear term is not invertible at q = 0")]
    NotInvertible,
    #[error("not a connection: residual at {inputs:?} -> {output}, q^{power}")]
    NotAConnection { inputs: Vec<usize>, output: usize, power: usize },
    #[error("arity cap too small: component of arity {needed} lies outside the solvable window (at most {window})")]
    ArityCapTooSmall { needed: usize, window: usize },
    #[error("not a deformation: curvature has a q-constant term")]
    NotADeformation,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] schwarz_core::SeriesError),
}

pub type Result<T> = std::result::Result<T, AinftyError>;
