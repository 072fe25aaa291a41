//! Scalars shared by every geometric module: exact rationals, the float
//! backend, and the tolerance policy that goes with it.

mod field;
pub mod linalg;
mod rational;

pub use field::{scalar_is_zero, Field, Scalar, Tolerance};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid numeric literal `{0}`")]
    InvalidLiteral(String),
    #[error("invalid tolerance (eps_abs={eps_abs}, eps_rel={eps_rel})")]
    InvalidTolerance { eps_abs: f64, eps_rel: f64 },
}

/// Canonical rational `n/d`.
pub fn normalize(n: i64, d: i64) -> Result<Rational, KernelError> {
    Rational::normalize(n, d)
}

/// Shorthand used throughout tests and examples: `q(3, 5)` is 3/5.
///
/// Panics on a zero denominator.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::normalize(n, d).expect("nonzero denominator")
}
