//! Exact scalars, Grassmannian points, Plücker coordinates, the right twist
//! and the named cluster expressions.

mod evaluation;
mod expression;
mod index;
mod matrix;
mod prime;
mod scalar;

pub use evaluation::PlueckerEvaluation;
pub use expression::{
    c_identity_holds, ClusterExpression, Dihedral, ExpressionKind, PlueckerPolynomial,
};
pub use index::PlueckerIndex;
pub use matrix::{cross, GrassmannPoint};
pub use prime::is_prime;
pub use scalar::{Backend, Fp, Modulus, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid index set: {0}")]
    InvalidIndex(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl AlgebraError {
    pub(crate) fn parse(what: &'static str, input: &str) -> Self {
        AlgebraError::Parse { what, input: input.chars().take(80).collect() }
    }
}
