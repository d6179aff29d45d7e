use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("2-form is not closed")]
    NotClosed,
    #[error("2-form is not symplectic")]
    NotSymplectic,
    #[error("covector does not lie on an open coadjoint orbit")]
    NotOpenOrbit,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid Lagrangian pair: {0}")]
    PairInvalid(String),
    #[error("point is not in the chart")]
    NotInChart,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
