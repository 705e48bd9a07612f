use std::fmt;

use bqt_field::FieldError;
use thiserror::Error;

/// Which structural hypothesis of the reconstruction procedure failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assumption {
    SimpleSpectrum,
    DMinus,
    Completeness,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Assumption::SimpleSpectrum => "simple_spectrum",
            Assumption::DMinus => "d_minus",
            Assumption::Completeness => "completeness",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("posets are not in general position: {0}")]
    NotInGeneralPosition(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("not excellent: {0}")]
    NotExcellent(String),
    #[error("inconsistent values around a cycle at {0}")]
    InconsistentCycles(String),
    #[error("pole at input: {0}")]
    PoleAtInput(String),
    #[error("{0} is not an addable weight")]
    NotAddable(String),
    #[error("very general position violated at ({0}, {1})")]
    VeryGeneralPositionViolated(String, String),
    #[error("not a coideal: {0}")]
    NotACoideal(String),
    #[error("map condition ({0}) violated: {1}")]
    MapConditionViolated(u8, String),
    #[error("incompatible edge functions: {0}")]
    IncompatibleEdgeFunctions(String),
    #[error("ill-typed word: {0}")]
    IllTypedWord(String),
    #[error("assumption violated ({0}): {1}")]
    AssumptionViolated(Assumption, String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
