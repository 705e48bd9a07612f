use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("character has a nonzero constant term ({0})")]
    NonzeroConstantTerm(i64),
    #[error("value is not a monomial: {0}")]
    NotMonomial(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
