use thiserror::Error;

use crate::matroid::ExchangeViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid usage: {0}")]
    Usage(String),
    #[error("degenerate projective point: every coordinate is infinite")]
    DegeneratePoint,
    #[error("value table has empty support: no basis has a finite value")]
    EmptySupport,
    #[error("not a valuated matroid: {0}")]
    NotValuatedMatroid(ExchangeViolation),
    #[error("not a realization: {0}")]
    NotRealization(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag, used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Usage(_) => "usage",
            Error::DegeneratePoint => "degenerate-point",
            Error::EmptySupport => "empty-support",
            Error::NotValuatedMatroid(_) => "not-a-matroid",
            Error::NotRealization(_) => "not-a-realization",
            Error::Capacity(_) => "capacity",
            Error::Parse(_) => "parse",
        }
    }
}
