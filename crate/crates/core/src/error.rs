//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("relations are linearly dependent: {0}")]
    DependentRelations(String),
    #[error("degree {requested} exceeds the truncation bound {bound}")]
    Truncation { requested: usize, bound: usize },
    #[error("singular change of variables")]
    SingularChange,
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("missing form `{0}` in assignment")]
    MissingForm(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("corpus error: {0}")]
    Corpus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
