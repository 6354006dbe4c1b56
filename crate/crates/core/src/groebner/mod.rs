//! Reduced Gröbner bases over ℚ, 𝔽_p and 𝔽_p(s), and the dimension of the
//! quotient ring read off the leading-term ideal.

mod buchberger;
mod dimension;
mod order;

use std::fmt;
use std::time::Duration;

use thiserror::Error;

pub use buchberger::{buchberger, normal_form, self_checks_passed, GroebnerBasis, GroebnerStats, Limits};
pub use dimension::{krull_dimension, monomial_dimension, DimensionResult};
pub use order::MonomialOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Degree(u32),
    Reductions(u64),
    Time(Duration),
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKind::Degree(d) => write!(f, "intermediate degree above {d}"),
            LimitKind::Reductions(n) => write!(f, "more than {n} pair reductions"),
            LimitKind::Time(t) => write!(f, "time budget of {:.1}s", t.as_secs_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("resource limit exceeded: {limit} (after {} pair reductions, max degree {})", stats.pairs_reduced, stats.max_degree)]
    ResourceExhausted { limit: LimitKind, stats: GroebnerStats },
    #[error("polynomial is not in the basis ring")]
    RingMismatch,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("Gröbner self-check failed: {0}")]
    SelfCheckFailed(String),
    #[error("generator {index} is not a single term")]
    NotMonomial { index: usize },
    #[error("{nvars} variables exceed the supported maximum of {max}")]
    TooManyVariables { nvars: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, GroebnerError>;
