use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {size} exceeds the working limit {limit}")]
    LimitExceeded { size: u128, limit: u64 },
    #[error("field {p}^{n} is too large to represent")]
    Unrepresentable { p: u64, n: u32 },
    #[error("operands live in different fields ({left} vs {right})")]
    ContextMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires characteristic {expected}, got {found}")]
    WrongCharacteristic { expected: String, found: u64 },
    #[error("{sub} does not embed into {sup}")]
    IncompatibleFields { sub: String, sup: String },
    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("curve is singular")]
    SingularCurve,
    #[error("invalid isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("cannot compose: target of the first map is not the source of the second")]
    ChainMismatch,
    #[error("not defined over the base field {0}")]
    NotOverBase(String),
    #[error("subgroup is not stable under Frobenius")]
    NotStable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
