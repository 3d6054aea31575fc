use thiserror::Error;

use crate::coxeter::Ball;

/// Every failure mode of the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("label m({s},{t}) = {label} is outside the supported set {{2,3,4,5,6,inf}} for rank > 2")]
    UnsupportedLabel { s: usize, t: usize, label: u32 },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("ball enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize, partial: Box<Ball> },

    #[error("operation requires a finite group, but {0} is infinite")]
    NotFinite(String),

    #[error("length {k} is out of range for the dihedral group with m = {m}")]
    LengthOutOfRange { m: u32, k: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function has a pole at {0}")]
    PoleError(String),

    #[error("cannot evaluate function: {0}")]
    EvaluationError(String),

    #[error("precondition violated: {0}")]
    PrecondViolated(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("extreme-point basis is singular")]
    SingularBasis,

    #[error("pairpartition is not noncrossing")]
    NotNoncrossing,

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("coarsening is not admissible: {0}")]
    NotAdmissible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
