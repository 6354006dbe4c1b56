//! Exact coefficient fields, sparse multivariate polynomials and truncated
//! power series in an auxiliary variable `t`.

mod field;
mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod series;

pub use field::{FieldElement, FieldSpec, MAX_PRIME};
pub use monomial::Monomial;
pub(crate) use monomial::revlex as monomial_revlex;
pub use parse::{parse_polynomial, ParseError};
pub use poly::{Polynomial, Ring, VariableContext};
pub(crate) use poly::same_ring;
pub use ratfunc::{RatFunc, UniPoly};
pub use series::{substitute_series, TruncatedSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("ring mismatch: polynomials live in different rings")]
    RingMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("invalid variable context: {0}")]
    InvalidVariables(String),
    #[error("arity mismatch: expected {expected} series, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),
    #[error("monomial has {got} exponents, ring has {expected} variables")]
    MonomialLength { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
