use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Monomial, Variables};
use super::rational::{pow_rational, Rational};
use super::AlgebraError;

/// A Laurent polynomial with rational coefficients over a fixed variable list.
///
/// Terms are kept in a map keyed by monomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: Variables,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(vars: &Variables) -> Self {
        LaurentPolynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Variables, c: Rational) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn monomial(vars: &Variables, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), vars.len(), "monomial length differs from variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { vars: vars.clone(), terms }
    }

    /// The `i`-th variable.
    pub fn var(vars: &Variables, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), Rational::one())
    }

    pub fn variable(vars: &Variables, name: &str) -> Result<Self, AlgebraError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(vars: &Variables, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial length differs from variable count");
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// The largest term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((m, c))` when the polynomial is the single term `c·m`.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    fn check_vars(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        if let Some(p) = self.small_terms().zip(other.small_terms()).and_then(|(a, b)| self.mul_small(&a, &b)) {
            return Ok(p);
        }
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by the term `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = match (m.is_one(), c.is_one()) {
            (true, true) => self.terms.clone(),
            (false, true) => self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
            _ => self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        };
        LaurentPolynomial { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        if let Some((m, c)) = self.as_monomial() {
            let c = pow_rational(c, e as i64).expect("nonnegative power");
            return Self::monomial(&self.vars, m.pow(e as i32), c);
        }
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require a single nonzero term.
    pub fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        match self.as_monomial() {
            Some((m, c)) => Ok(Self::monomial(&self.vars, m.pow(e as i32), pow_rational(c, e)?)),
            None => Err(AlgebraError::NotInvertible(self.to_string())),
        }
    }

    /// Componentwise minimum exponent over all terms (the trivial monomial for zero).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Evaluates at `values[i]` for the `i`-th variable.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational, AlgebraError> {
        assert_eq!(values.len(), self.nvars(), "one value per variable");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e != 0 {
                    let v = pow_rational(&values[i], e as i64).map_err(|_| {
                        AlgebraError::DivisionByZero(format!(
                            "{} = 0 under a negative exponent",
                            self.vars.names()[i]
                        ))
                    })?;
                    t *= v;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Formal partial derivative in the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e != 0 {
                let mut dm = m.clone();
                dm.0[i] -= 1;
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Largest exponent of variable `i` (`None` for zero).
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exponents()[i]).max()
    }

    /// Smallest exponent of variable `i` (`None` for zero).
    pub fn low_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exponents()[i]).min()
    }

    /// Groups terms by the exponent of variable `i`; coefficients no longer involve it.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<i32, LaurentPolynomial> {
        let mut out: BTreeMap<i32, LaurentPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            let mut rest = m.clone();
            rest.0[i] = 0;
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] != 0))
            .collect()
    }

    /// Exact quotient in the Laurent ring, or `None` when `other` does not divide.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(self.vars == other.vars, "variable lists differ");
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.vars));
        }
        if let Some((m, c)) = other.as_monomial() {
            return Some(self.mul_term(&m.inverse(), &c.recip()));
        }
        let (ma, a) = super::split_monomial(self);
        let (mb, b) = super::split_monomial(other);
        let q = a.poly_div_exact(&b)?;
        Some(q.mul_term(&ma.div(&mb), &Rational::one()))
    }

    /// Polynomial exact division; both sides must have nonnegative exponents.
    /// Terms with their coefficients as `i128`, if all are integers that fit.
    fn small_terms(&self) -> Option<Vec<(&Monomial, i128)>> {
        self.terms.iter().map(|(m, c)| c.is_integer().then(|| c.numer().to_i128()).flatten().map(|v| (m, v))).collect()
    }

    fn from_small(vars: &Variables, terms: impl IntoIterator<Item = (Monomial, i128)>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, Rational::from_integer(c.into())));
        LaurentPolynomial { vars: vars.clone(), terms: terms.collect() }
    }

    /// Product over machine integers; `None` on overflow.
    fn mul_small(&self, a: &[(&Monomial, i128)], b: &[(&Monomial, i128)]) -> Option<Self> {
        let mut acc: HashMap<Monomial, i128> = HashMap::default();
        acc.reserve(a.len().max(b.len()) * 4);
        for &(ma, ca) in a {
            for &(mb, cb) in b {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = e.checked_add(ca.checked_mul(cb)?)?;
            }
        }
        Some(Self::from_small(&self.vars, acc))
    }

    /// Exact division over machine integers: `Some(None)` when a leading
    /// monomial does not divide (inexact over any field), `None` on overflow or a
    /// non-integral quotient coefficient.
    fn div_small(&self, a: &[(&Monomial, i128)], b: &[(&Monomial, i128)]) -> Option<Option<Self>> {
        let &(lm, lc) = b.last()?;
        let mut r: BTreeMap<Monomial, i128> = a.iter().map(|&(m, c)| (m.clone(), c)).collect();
        let mut q = Vec::new();
        while let Some((rm, &rc)) = r.iter().next_back() {
            if !rm.is_divisible_by(lm) {
                return Some(None);
            }
            if rc % lc != 0 {
                return None;
            }
            let tm = rm.div(lm);
            let tc = rc / lc;
            for &(bm, bc) in b {
                let m = bm.mul(&tm);
                let d = bc.checked_mul(tc)?;
                match r.entry(m) {
                    Entry::Occupied(mut e) => {
                        let v = e.get().checked_sub(d)?;
                        if v == 0 {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(d.checked_neg()?);
                    }
                }
            }
            q.push((tm, tc));
        }
        Some(Some(Self::from_small(&self.vars, q)))
    }

    pub(crate) fn poly_div_exact(&self, b: &Self) -> Option<Self> {
        if let Some((sa, sb)) = self.small_terms().zip(b.small_terms()) {
            if let Some(q) = self.div_small(&sa, &sb) {
                return q;
            }
        }
        let (lm, lc) = b.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut r = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((rm, rc)) = r.leading_term() {
            if !rm.is_divisible_by(&lm) {
                return None;
            }
            let tm = rm.div(&lm);
            let tc = rc / &lc;
            // In place: rebuilding r per quotient term is quadratic in |r|.
            for (bm, bc) in &b.terms {
                r.add_term(bm.mul(&tm), -(bc * &tc));
            }
            q.add_term(tm, tc);
        }
        Some(q)
    }

    /// The same polynomial over a different, compatible list (matched by name).
    pub fn rebase(&self, vars: &Variables) -> Result<Self, AlgebraError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| vars.index_of(n).ok_or_else(|| AlgebraError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(vars.len());
            for (i, &x) in m.exponents().iter().enumerate() {
                e.0[map[i]] += x;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// True when every coefficient is positive.
    pub fn is_subtraction_free(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    let name = &self.vars.names()[i];
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$try(rhs).expect("operands share a variable list")
            }
        }
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn ring() -> (Variables, LaurentPolynomial, LaurentPolynomial) {
        let v = Variables::numbered("X", 2);
        let x1 = LaurentPolynomial::var(&v, 0);
        let x2 = LaurentPolynomial::var(&v, 1);
        (v, x1, x2)
    }

    #[test]
    fn distributes_over_monomial() {
        let (v, x1, _) = ring();
        let one = LaurentPolynomial::one(&v);
        let p = (&x1 + &one) * x1.powi(-1).unwrap();
        assert_eq!(p, &one + &x1.powi(-1).unwrap());
        assert_eq!(p.to_string(), "1 + X1^-1");
    }

    #[test]
    fn additive_identity() {
        let (v, x1, x2) = ring();
        let p = &(&x1 * &x2) + &LaurentPolynomial::constant(&v, rat(3, 2));
        assert_eq!(&p + &LaurentPolynomial::zero(&v), p);
    }

    #[test]
    fn difference_of_squares() {
        let (v, x1, _) = ring();
        let one = LaurentPolynomial::one(&v);
        let p = (&one + &x1) * (&one - &x1);
        assert_eq!(p, &one - &x1.pow(2));
        assert_eq!(p.to_string(), "-X1^2 + 1");
    }

    #[test]
    fn mismatched_lists_error() {
        let (_, x1, _) = ring();
        let w = Variables::numbered("Y", 2);
        let y1 = LaurentPolynomial::var(&w, 0);
        assert!(matches!(x1.try_add(&y1), Err(AlgebraError::VariableMismatch { .. })));
        assert!(x1.try_mul(&y1).is_err());
    }

    #[test]
    fn evaluation_and_derivative() {
        let (v, x1, x2) = ring();
        let p = &x1.pow(2) * &x2.powi(-1).unwrap() + LaurentPolynomial::constant(&v, int(1));
        assert_eq!(p.evaluate(&[int(2), int(4)]).unwrap(), int(2));
        assert!(p.evaluate(&[int(2), int(0)]).is_err());
        let d = p.derivative(1);
        assert_eq!(d, -(&x1.pow(2) * &x2.powi(-2).unwrap()));
    }

    #[test]
    fn exact_division() {
        let (v, x1, x2) = ring();
        let one = LaurentPolynomial::one(&v);
        let a = &(&x1 + &x2) * &(&x1 * &x1 - &one);
        let b = &x1 - &one;
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, &(&x1 + &x2) * &(&x1 + &one));
        assert!(a.div_exact(&(&x2 + &LaurentPolynomial::constant(&v, int(2)))).is_none());
        let shifted = a.mul_term(&Monomial::from_exponents(&[-2, 1]), &int(3));
        assert_eq!(
            shifted.div_exact(&b).unwrap(),
            q.mul_term(&Monomial::from_exponents(&[-2, 1]), &int(3))
        );
    }
}
