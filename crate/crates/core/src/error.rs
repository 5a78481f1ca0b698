use thiserror::Error;

use crate::coeffs::CoefficientRing;

/// Errors shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{0} is not an integral domain")]
    NotIntegralDomain(CoefficientRing),

    #[error("2 is not invertible in {0}")]
    TwoNotInvertible(CoefficientRing),

    #[error("characteristic {0} is excluded for this computation")]
    ExcludedCharacteristic(u64),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("idempotence fails: {i}*{i} = {product}")]
    IdempotenceViolation { i: usize, product: usize },

    #[error("right translation by {j} is not bijective: {i1}*{j} = {i2}*{j} = {product}")]
    RightTranslationViolation {
        j: usize,
        i1: usize,
        i2: usize,
        product: usize,
    },

    #[error("right distributivity fails at ({i}, {j}, {k}): {lhs} != {rhs}")]
    DistributivityViolation {
        i: usize,
        j: usize,
        k: usize,
        lhs: usize,
        rhs: usize,
    },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("not a group automorphism: {0}")]
    NotAutomorphism(String),

    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("{what} is {value}, above the limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("operands live in different quandle rings")]
    RingMismatch,

    #[error("free quandle ranks differ: {0} and {1}")]
    RankMismatch(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown quandle name `{0}`")]
    UnknownName(String),

    #[error("hypothesis fails: {0}")]
    HypothesisFailed(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejects `value > limit` with a `BoundExceeded` error.
pub(crate) fn check_bound(what: &'static str, value: u128, limit: u128) -> Result<()> {
    if value > limit {
        Err(Error::BoundExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
