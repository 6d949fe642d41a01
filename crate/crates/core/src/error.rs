use crate::algebra::FieldTag;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field tag mismatch: {0:?} vs {1:?}")]
    TagMismatch(FieldTag, FieldTag),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition refused: {0}")]
    Precondition(String),
    #[error("iteration limit reached: {0}")]
    NonConvergence(String),
    #[error("numerical degeneracy: {0}")]
    Degeneracy(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point at infinity")]
    PointAtInfinity,
}

pub type Result<T> = std::result::Result<T, Error>;
