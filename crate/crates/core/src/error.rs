use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not expandable at origin: denominator has zero constant term")]
    NotExpandable,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("derivative undefined at this truncation (order 0)")]
    DerivativeUndefined,
    #[error("exp undefined: series has nonzero constant term")]
    ExpUndefined,
    #[error("non-integral coefficient {value} at degree {degree}")]
    NonIntegral { degree: usize, value: String },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid quandle: {0}")]
    InvalidQuandle(String),
    #[error("partitions over different ground sets ({0} vs {1})")]
    GroundSetMismatch(usize, usize),
    #[error("words over different moduli ({0} vs {1})")]
    ModulusMismatch(String, String),
    #[error("commutator length is not 1: {0}")]
    CommutatorLength(String),
    #[error("state budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
