//! Sparse multivariate polynomials and rational functions over Z_p, and
//! symbolic seed mutation.

mod gcd;
mod poly;
mod rational;
mod seed;

use thiserror::Error;

use crate::cluster::ClusterError;

pub use gcd::gcd;
pub use poly::{Evaluator, Monomial, Polynomial};
pub use rational::RationalFunction;
pub use seed::{linear_form, SymbolicSeed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes the denominator identically zero")]
    DegenerateSubstitution,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("denominator is not a monomial")]
    NotClusterShaped,
    #[error("expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("coefficients live in Z_{polynomial} but the field has characteristic {field}")]
    CharacteristicMismatch { polynomial: u64, field: u64 },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}
