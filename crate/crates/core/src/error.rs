use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("argument must be nonzero")]
    Zero,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: u64, dividend: u64 },
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("{value} is not a unit modulo {modulus}")]
    NotUnit { value: i64, modulus: u64 },
    #[error("invalid discriminant {0}")]
    BadDiscriminant(i64),
    #[error("trace {t} is outside t^2 < 4q for q = {q}")]
    OutsideHasse { t: i64, q: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cannot invert zero in F_{0}")]
    ZeroInverse(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
