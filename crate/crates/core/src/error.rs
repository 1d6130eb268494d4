use crate::rings::RingSpec;

/// Errors raised by the exact-arithmetic and factorization routines.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("2 is not a unit in {0}, the hypothesis R = 2R fails")]
    TwoNotUnit(RingSpec),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("expected even size, got {0}")]
    OddSize(usize),
    #[error("determinant {0} is not a unit")]
    Singular(String),
    #[error("Pfaffian is {0}, expected 1")]
    PfaffianNotOne(String),
    #[error("vector is not unimodular (entries generate the ideal of {0})")]
    NotUnimodular(String),
    #[error("matrix is not symplectic for the given form")]
    NotSymplectic,
    #[error("word does not evaluate to the identity at X = 0")]
    NotIdentityAtZero,
    #[error("unknown form id {0:?}")]
    UnknownForm(String),
    #[error("form mismatch: {0}")]
    FormMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Malformed input, as opposed to a failed mathematical hypothesis.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
