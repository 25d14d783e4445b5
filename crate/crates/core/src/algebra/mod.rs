//! Exact scalars, Laurent polynomials and matrices.

pub mod laurent;
pub mod matrix;
pub mod ring;

use thiserror::Error;

pub use laurent::{LaurentPolynomial, LaurentRing, Monomial, VarKind, Variable};
pub use matrix::Matrix;
pub use ring::{is_prime, Field, Fp, Integers, PrimeField, Ring, Rational, Rationals};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{0}` is not a unit monomial")]
    NotAUnitMonomial(String),
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(Variable),
    #[error("variable {0} is zero but appears with a negative exponent")]
    ZeroToNegativePower(Variable),
    #[error("matrix is {0}x{1}, not square")]
    NonSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
