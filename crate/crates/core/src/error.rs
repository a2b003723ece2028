use thiserror::Error;

use crate::exact_couples::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid invariant factors: {0}")]
    InvalidGroup(String),

    #[error("entry ({row}, {col}) violates the homomorphism congruence")]
    InvalidHom { row: usize, col: usize },

    #[error("source/target mismatch: {0}")]
    Mismatch(String),

    #[error("element coordinates invalid: {0}")]
    InvalidElement(String),

    #[error("operation requires a finite group")]
    Infinite,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid exact couple: {}", format_violations(.0))]
    InvalidCouple(Vec<Violation>),

    #[error("couple violates the exact-couple axioms: no isomorphism to the canonical couple")]
    NoIsomorphism,

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("couple file line {line}: {msg}")]
    CoupleFile { line: usize, msg: String },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
