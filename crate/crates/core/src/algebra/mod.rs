//! Exact multivariate Laurent-polynomial and rational-function arithmetic over ℚ.

mod fast;
mod gcd;
mod laurent;
mod monomial;
mod parse;
mod ratfunc;
mod rational;
mod scalar;

use thiserror::Error;

pub use fast::FastRational;
pub use gcd::{poly_gcd, split_monomial};
pub use laurent::LaurentPolynomial;
pub use monomial::{Exponents, Monomial, Variables};
pub use ratfunc::{RationalFunction, VariableAssignment};
pub use rational::{
    as_i64, denominator_lcm, format_rational, int, negative_part, parse_rational, positive_part,
    pow_rational, rat, Rational,
};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("denominator {denominator} vanishes at the evaluation point")]
    Evaluation { denominator: String },
    #[error("variable `{0}` has no assigned value")]
    Unassigned(String),
    #[error("{0} is not invertible in the Laurent ring")]
    NotInvertible(String),
}
