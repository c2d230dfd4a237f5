use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{degree} exceeds the supported maximum of 2^20 elements")]
    FieldTooLarge { p: u64, degree: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("supplied modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial shares a factor with the modulus")]
    NotInvertible,
    #[error("norm expansion degree {0} exceeds the cap of 512")]
    ExpansionTooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parameters outside the formula's range: {0}")]
    OutOfRange(String),
    #[error("hypothesis check failed: {}", .0.join("; "))]
    Hypotheses(Vec<String>),
}
