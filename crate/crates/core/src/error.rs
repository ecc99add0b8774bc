use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate momentum: k = 0 has no helicity frame")]
    DegenerateMomentum,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("incompatible fields: {0}")]
    Incompatible(String),
    #[error("representation error: {0}")]
    Representation(String),
    #[error("singular point: {0}")]
    Singularity(String),
    #[error("extrapolation did not converge: {0}")]
    Convergence(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
