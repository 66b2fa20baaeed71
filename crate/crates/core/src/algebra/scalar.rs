use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use super::rational::{pow_rational, Rational};
use super::ratfunc::RationalFunction;
use super::AlgebraError;

/// Field operations shared by exact rationals and rational functions.
///
/// Constructors take a reference element because rational functions need a
/// variable list. Binary operations panic on mismatched variable lists; both
/// operands are always built from one alphabet inside this crate.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError>;
    fn powi(&self, e: i64) -> Result<Self, AlgebraError>;

    fn inv(&self) -> Result<Self, AlgebraError> {
        self.one_like().checked_div(self)
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if Zero::is_zero(other) {
            Err(AlgebraError::DivisionByZero(format!("{self}/0")))
        } else {
            Ok(self / other)
        }
    }
    fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        pow_rational(self, e)
    }
}

impl Scalar for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.variables())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.variables())
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        RationalFunction::constant(self.variables(), q.clone())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RationalFunction::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("shared variable list")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("shared variable list")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("shared variable list")
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_div(other)
    }
    fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        RationalFunction::powi(self, e)
    }
}
