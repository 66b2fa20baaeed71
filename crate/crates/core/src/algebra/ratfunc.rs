use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gcd::{poly_gcd, primitive_part, split_monomial};
use super::laurent::LaurentPolynomial;
use super::monomial::Variables;
use super::rational::Rational;
use super::AlgebraError;

/// A point of a torus: every variable is sent to a nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VariableAssignment {
    values: BTreeMap<String, Rational>,
}

impl VariableAssignment {
    pub fn new<I, S>(pairs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        let mut values = BTreeMap::new();
        for (name, v) in pairs {
            let name = name.into();
            if v.is_zero() {
                return Err(AlgebraError::DivisionByZero(format!("{name} assigned zero")));
            }
            values.insert(name, v);
        }
        Ok(VariableAssignment { values })
    }

    /// Assigns `values[i]` to the `i`-th name of `vars`.
    pub fn from_values(vars: &Variables, values: &[Rational]) -> Result<Self, AlgebraError> {
        Self::new(vars.names().iter().cloned().zip(values.iter().cloned()))
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.get(name)
    }

    /// Values in the order of `vars`.
    pub fn values_for(&self, vars: &Variables) -> Result<Vec<Rational>, AlgebraError> {
        vars.names()
            .iter()
            .map(|n| self.values.get(n).cloned().ok_or_else(|| AlgebraError::Unassigned(n.clone())))
            .collect()
    }
}

/// A quotient of Laurent polynomials in canonical form.
///
/// The denominator is a polynomial with no monomial factor, integral and primitive,
/// with positive leading coefficient, and coprime to the numerator. Monomial
/// denominators are absorbed into the numerator, so a Laurent polynomial has
/// denominator exactly 1.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    /// Canonical form of `num / den`.
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self, AlgebraError> {
        if num.variables() != den.variables() {
            return Err(AlgebraError::VariableMismatch {
                left: num.variables().names().to_vec(),
                right: den.variables().names().to_vec(),
            });
        }
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero(format!("({num})/0")));
        }
        let vars = num.variables().clone();
        if num.is_zero() {
            return Ok(Self::zero(&vars));
        }
        let (md, d0) = split_monomial(&den);
        let (c, d0) = primitive_part(&d0);
        let num = num.mul_term(&md.inverse(), &c.recip());
        if d0.is_one() {
            return Ok(RationalFunction { num, den: d0 });
        }
        let (mn, n0) = split_monomial(&num);
        if let Some(q) = n0.poly_div_exact(&d0) {
            return Ok(RationalFunction {
                num: q.mul_term(&mn, &Rational::one()),
                den: LaurentPolynomial::one(&vars),
            });
        }
        let g = poly_gcd(&n0, &d0);
        let (n0, d0) = if g.is_one() {
            (n0, d0)
        } else {
            (
                n0.poly_div_exact(&g).expect("gcd divides"),
                d0.poly_div_exact(&g).expect("gcd divides"),
            )
        };
        let (c, d0) = primitive_part(&d0);
        Ok(RationalFunction { num: n0.mul_term(&mn, &c.recip()), den: d0 })
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        let den = LaurentPolynomial::one(p.variables());
        RationalFunction { num: p, den }
    }

    pub fn zero(vars: &Variables) -> Self {
        Self::from_laurent(LaurentPolynomial::zero(vars))
    }

    pub fn one(vars: &Variables) -> Self {
        Self::from_laurent(LaurentPolynomial::one(vars))
    }

    pub fn constant(vars: &Variables, c: Rational) -> Self {
        Self::from_laurent(LaurentPolynomial::constant(vars, c))
    }

    pub fn var(vars: &Variables, i: usize) -> Self {
        Self::from_laurent(LaurentPolynomial::var(vars, i))
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn variables(&self) -> &Variables {
        self.num.variables()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// The Laurent polynomial equal to `self`, or `None` when the reduced
    /// denominator is not a monomial.
    pub fn as_laurent(&self) -> Option<&LaurentPolynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.den.is_one() && other.den.is_one() {
            return Ok(Self::from_laurent(self.num.try_add(&other.num)?));
        }
        if self.den == other.den {
            return Self::new(self.num.try_add(&other.num)?, self.den.clone());
        }
        let n = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
        Self::new(n, self.den.try_mul(&other.den)?)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.den.is_one() && other.den.is_one() {
            return Ok(Self::from_laurent(self.num.try_mul(&other.num)?));
        }
        Self::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero(format!("({self})/0")));
        }
        Self::new(self.num.try_mul(&other.den)?, self.den.try_mul(&other.num)?)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        // Zero has the canonical denominator 1.
        if c.is_zero() {
            return Self::zero(self.num.variables());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        let e = u32::try_from(e).map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
        // Powers of coprime polynomials stay coprime.
        Ok(RationalFunction { num: self.num.pow(e), den: self.den.pow(e) })
    }

    /// Evaluates at a point given in variable order.
    pub fn evaluate_values(&self, values: &[Rational]) -> Result<Rational, AlgebraError> {
        let d = self.den.evaluate(values)?;
        if d.is_zero() {
            return Err(AlgebraError::Evaluation { denominator: self.den.to_string() });
        }
        Ok(self.num.evaluate(values)? / d)
    }

    pub fn evaluate(&self, point: &VariableAssignment) -> Result<Rational, AlgebraError> {
        self.evaluate_values(&point.values_for(self.variables())?)
    }

    /// Partial derivative in the variable called `name`.
    pub fn partial_derivative(&self, name: &str) -> Result<Self, AlgebraError> {
        let i = self
            .variables()
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Partial derivative in the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_one() {
            return Self::from_laurent(self.num.derivative(i));
        }
        let n = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        Self::new(n, self.den.pow(2)).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        Self::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn setup() -> (Variables, RationalFunction, RationalFunction, RationalFunction) {
        let v = Variables::numbered("X", 2);
        let x1 = RationalFunction::var(&v, 0);
        let x2 = RationalFunction::var(&v, 1);
        let one = RationalFunction::one(&v);
        (v, x1, x2, one)
    }

    #[test]
    fn cancel_common_factor() {
        let (_, x1, _, one) = setup();
        let f = x1.powi(2).unwrap().try_sub(&one).unwrap().try_div(&x1.try_sub(&one).unwrap()).unwrap();
        assert_eq!(f.as_laurent().unwrap(), &x1.try_add(&one).unwrap().num);
    }

    #[test]
    fn monomial_denominator_is_laurent() {
        let (_, x1, _, one) = setup();
        let f = one.try_add(&x1).unwrap().try_div(&x1).unwrap();
        assert_eq!(f.to_string(), "1 + X1^-1");
        assert!(f.is_laurent());
    }

    #[test]
    fn non_monomial_denominator() {
        let (_, x1, x2, one) = setup();
        let f = one.try_add(&x1).unwrap().try_div(&one.try_add(&x2).unwrap()).unwrap();
        assert!(f.as_laurent().is_none());
        assert_eq!(f.to_string(), "(X1 + 1)/(X2 + 1)");
    }

    #[test]
    fn evaluation() {
        let (v, x1, x2, one) = setup();
        let p = VariableAssignment::new([("X1", int(1)), ("X2", int(7))]).unwrap();
        assert_eq!(x1.try_add(&one).unwrap().evaluate(&p).unwrap(), int(2));
        let f = x2.powi(2).unwrap().try_add(&one).unwrap().try_div(&x1).unwrap();
        let q = VariableAssignment::from_values(&v, &[int(2), int(3)]).unwrap();
        assert_eq!(f.evaluate(&q).unwrap(), int(5));
        let pole = one.try_div(&x1.try_sub(&one).unwrap()).unwrap();
        match pole.evaluate(&p) {
            Err(AlgebraError::Evaluation { denominator }) => assert_eq!(denominator, "X1 - 1"),
            other => panic!("expected evaluation error, got {other:?}"),
        }
        assert!(VariableAssignment::new([("X1", int(0))]).is_err());
    }

    #[test]
    fn derivatives() {
        let (_, x1, x2, one) = setup();
        assert_eq!(x1.powi(2).unwrap().partial_derivative("X1").unwrap(), x1.scale(&int(2)));
        assert_eq!(
            x1.inv().unwrap().partial_derivative("X1").unwrap(),
            x1.powi(-2).unwrap().neg()
        );
        let f = one.try_add(&x1).unwrap().try_div(&x2).unwrap();
        let want = one.try_add(&x1).unwrap().try_div(&x2.powi(2).unwrap()).unwrap().neg();
        assert_eq!(f.partial_derivative("X2").unwrap(), want);
        assert!(f.partial_derivative("Y").is_err());
    }

    #[test]
    fn canonical_denominator_sign_and_scale() {
        let (_, x1, x2, one) = setup();
        let d = one.try_add(&x2).unwrap().scale(&int(-6));
        let f = x1.try_div(&d).unwrap();
        assert_eq!(f.denominator().to_string(), "X2 + 1");
        assert_eq!(f.numerator().to_string(), "-1/6*X1");
    }
}
