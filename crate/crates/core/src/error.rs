use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("{0} is not a prime")]
    InvalidPrime(BigInt),
    #[error("prime {0} is outside the supported word-size range")]
    PrimeTooLarge(BigInt),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("quadratic form is singular")]
    SingularForm,
    #[error("polynomial is reducible over the rationals")]
    Reducible(Vec<String>),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("wild ramification at {0}")]
    WildRamification(BigInt),
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("could not factor {0} within the search budget")]
    FactorizationBudget(BigInt),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
