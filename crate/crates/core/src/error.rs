use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} exceeds the supported maximum of 2^15")]
    PrimeTooLarge(u64),

    #[error("element ({i}, {j}) is out of range for p = {p}")]
    ElementOutOfRange { i: u64, j: u64, p: u32 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("{order} does not divide q - 1 = {q_minus_one}")]
    NotDivisor { order: u64, q_minus_one: u64 },

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: BigUint, bound: usize },

    #[error("polynomial does not split over the field")]
    NotSplit,

    #[error("invalid oracle input: {0}")]
    OracleInput(String),

    #[error("the exponent criterion needs a uniform order N")]
    NonUniformOrder,

    #[error("{candidates} candidates exceed the configured budget of {budget}")]
    BudgetExceeded { candidates: BigUint, budget: u64 },

    #[error("specifications belong to different fields")]
    FieldMismatch,

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable tag for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::PrimeTooLarge(_) => "prime-too-large",
            Error::ElementOutOfRange { .. } => "element-out-of-range",
            Error::ZeroInverse => "zero-inverse",
            Error::NotDivisor { .. } => "not-divisor",
            Error::DegreeBound { .. } => "degree-bound",
            Error::NotSplit => "not-split",
            Error::OracleInput(_) => "oracle-input",
            Error::NonUniformOrder => "non-uniform-order",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::FieldMismatch => "field-mismatch",
            Error::Invalid(_) => "invalid-input",
        }
    }
}
