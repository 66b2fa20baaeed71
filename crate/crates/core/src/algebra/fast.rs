//! A second exact rational backend for long numeric orbits.
//!
//! Iterated mutation produces numerators with thousands of digits; the
//! subquadratic gcd of `malachite` keeps those orbits tractable. Values cross
//! into [`Rational`] only at the edges of a computation.

use std::fmt;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Pow, Reciprocal};
use malachite_base::num::basic::traits::{One, Zero};

use super::rational::{parse_rational, Rational};
use super::scalar::Scalar;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FastRational(malachite_q::Rational);

impl FastRational {
    pub fn to_rational(&self) -> Rational {
        parse_rational(&self.0.to_string()).expect("malachite renders p/q")
    }
}

impl From<&Rational> for FastRational {
    fn from(q: &Rational) -> Self {
        FastRational(malachite_q::Rational::from_str(&q.to_string()).expect("num renders p/q"))
    }
}

impl From<i64> for FastRational {
    fn from(v: i64) -> Self {
        FastRational(malachite_q::Rational::from(v))
    }
}

impl fmt::Display for FastRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Scalar for FastRational {
    fn zero_like(&self) -> Self {
        FastRational(malachite_q::Rational::ZERO)
    }
    fn one_like(&self) -> Self {
        FastRational(malachite_q::Rational::ONE)
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.into()
    }
    fn is_zero(&self) -> bool {
        self.0 == malachite_q::Rational::ZERO
    }
    fn is_one(&self) -> bool {
        self.0 == malachite_q::Rational::ONE
    }
    fn add(&self, other: &Self) -> Self {
        FastRational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        FastRational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        FastRational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        FastRational(-&self.0)
    }
    fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            Err(AlgebraError::DivisionByZero(format!("{self}/0")))
        } else {
            Ok(FastRational(&self.0 / &other.0))
        }
    }
    fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        if e < 0 && self.is_zero() {
            return Err(AlgebraError::DivisionByZero("0 raised to a negative power".into()));
        }
        Ok(FastRational((&self.0).pow(e)))
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero("1/0".into()));
        }
        Ok(FastRational((&self.0).reciprocal()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pow_rational, rat};

    #[test]
    fn agrees_with_the_reference_backend() {
        let samples = [rat(3, 7), rat(-22, 9), rat(0, 1), rat(1, 1), rat(-5, 1), rat(123456789, 1000003)];
        for a in &samples {
            let fa = FastRational::from(a);
            assert_eq!(fa.to_rational(), *a);
            for e in -3..=3 {
                let want = pow_rational(a, e).ok();
                assert_eq!(fa.powi(e).ok().map(|v| v.to_rational()), want, "{a}^{e}");
            }
            for b in &samples {
                let fb = FastRational::from(b);
                assert_eq!(fa.add(&fb).to_rational(), a + b);
                assert_eq!(fa.sub(&fb).to_rational(), a - b);
                assert_eq!(fa.mul(&fb).to_rational(), a * b);
                assert_eq!(fa.checked_div(&fb).ok().map(|v| v.to_rational()), a.checked_div(b).ok());
            }
        }
        assert_eq!(FastRational::from(-4).to_string(), "-4");
        assert_eq!(FastRational::from(&rat(-6, 4)).to_string(), "-3/2");
    }
}
