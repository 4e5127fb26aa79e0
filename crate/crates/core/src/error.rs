use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization of {0} did not complete within the effort budget")]
    IncompleteFactorization(BigInt),
    #[error("{0} is not squarefree")]
    NotSquarefree(BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("exponent {exponent} of the prime above {prime} is not divisible by {n}")]
    ExponentNotDivisible { prime: BigInt, exponent: i64, n: u32 },
    #[error("point lies on the support of the divisor (t = 1)")]
    SupportCollision,
    #[error("point is a cusp")]
    Cusp,
    #[error("field constant {0} is not negative")]
    NotImaginary(i64),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("birational map undefined at this point")]
    MapUndefined,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value does not fit the machine integer range: {0}")]
    Overflow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("class of order {order} where order dividing {expected} was required")]
    UnexpectedOrder { order: u64, expected: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
