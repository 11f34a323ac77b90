use thiserror::Error;

/// Errors raised across the library. The variant name is part of the CLI
/// diagnostic line, so renaming a variant changes observable output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DegreeError: {0}")]
    Degree(String),
    #[error("SquarefreeError: {0}")]
    Squarefree(String),
    #[error("NotPrimeError: {0} is not prime")]
    NotPrime(String),
    #[error("MonicError: {0}")]
    Monic(String),
    #[error("ReducibleError: {0}")]
    Reducible(String),
    #[error("AlgebraError: {0}")]
    Algebra(String),
    #[error("InconsistencyError: {0}")]
    Inconsistency(String),
    #[error("ElementNotInGroup: {0}")]
    ElementNotInGroup(String),
    #[error("GroupTooLarge: {0}")]
    GroupTooLarge(String),
    #[error("PlaceError: {0}")]
    Place(String),
    #[error("FormError: {0}")]
    Form(String),
    #[error("HigherRankError: {0}")]
    HigherRank(String),
    #[error("FactorError: {0}")]
    Factor(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
