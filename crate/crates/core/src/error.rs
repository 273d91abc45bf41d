use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for a constant polynomial")]
    ConstantPolynomial,
    #[error("degree {found} outside supported range {min}..={max}")]
    DegreeOutOfRange { min: usize, max: usize, found: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("polynomial is not squarefree (gcd with its derivative is nonconstant)")]
    NotSquarefree,
    #[error("operation undefined for zero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("modulus {0} does not fit the prime-field backend")]
    ModulusTooLarge(BigInt),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("factorization incomplete; unfactored cofactor {0}")]
    IncompleteFactorization(BigInt),
    #[error("family {family} takes {expected} parameter(s), got {found}")]
    Arity {
        family: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
