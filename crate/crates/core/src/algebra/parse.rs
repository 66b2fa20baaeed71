//! Text grammar shared by `Display` and the parsers.
//!
//! ```text
//! poly   := sign? term (sign term)*      sign := '+' | '-'
//! term   := factor ('*' factor)*
//! factor := int ('/' int)? | name ('^' '-'? int)?
//! ratfn  := poly | '(' poly ')' '/' '(' poly ')'
//! ```
//! Whitespace is ignored. Names are matched against the variable list.

use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::LaurentPolynomial;
use super::monomial::{Monomial, Variables};
use super::ratfunc::RationalFunction;
use super::rational::Rational;
use super::AlgebraError;

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
    vars: &'a Variables,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{what} in `{}`", self.src))
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        digits.parse().map_err(|_| self.err("expected digits"))
    }

    fn name(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        s
    }

    fn factor(&mut self, m: &mut Monomial, c: &mut Rational) -> Result<(), AlgebraError> {
        match self.peek() {
            Some(d) if d.is_ascii_digit() => {
                let p = self.integer()?;
                let mut q = BigInt::one();
                if self.peek() == Some('/') {
                    self.chars.next();
                    q = self.integer()?;
                    if q == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                }
                *c *= Rational::new(p, q);
            }
            Some(a) if a.is_alphabetic() || a == '_' => {
                let name = self.name();
                let i = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.clone()))?;
                let mut e: i32 = 1;
                if self.peek() == Some('^') {
                    self.chars.next();
                    let neg = if self.peek() == Some('-') {
                        self.chars.next();
                        true
                    } else {
                        false
                    };
                    let k = self.integer()?;
                    e = i32::try_from(k).map_err(|_| self.err("exponent out of range"))?;
                    if neg {
                        e = -e;
                    }
                }
                m.0[i] += e;
            }
            _ => return Err(self.err("expected a coefficient or variable")),
        }
        Ok(())
    }

    fn poly(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                }
                Some('-') => {
                    self.chars.next();
                    sign = -sign;
                }
                _ if first => {}
                _ => break,
            }
            first = false;
            let mut m = Monomial::one(self.vars.len());
            let mut c = sign;
            self.factor(&mut m, &mut c)?;
            while self.peek() == Some('*') {
                self.chars.next();
                self.factor(&mut m, &mut c)?;
            }
            terms.push((m, c));
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok(LaurentPolynomial::from_terms(self.vars, terms))
    }

    fn expect(&mut self, ch: char) -> Result<(), AlgebraError> {
        if self.peek() == Some(ch) {
            self.chars.next();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{ch}`")))
        }
    }

    fn finish(&mut self) -> Result<(), AlgebraError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(&format!("unexpected `{c}`"))),
        }
    }
}

impl LaurentPolynomial {
    pub fn parse(s: &str, vars: &Variables) -> Result<Self, AlgebraError> {
        let mut p = Parser { chars: s.chars().peekable(), vars, src: s };
        let out = p.poly()?;
        p.finish()?;
        Ok(out)
    }
}

impl RationalFunction {
    pub fn parse(s: &str, vars: &Variables) -> Result<Self, AlgebraError> {
        let mut p = Parser { chars: s.chars().peekable(), vars, src: s };
        if p.peek() != Some('(') {
            let out = p.poly()?;
            p.finish()?;
            return Ok(RationalFunction::from_laurent(out));
        }
        p.expect('(')?;
        let num = p.poly()?;
        p.expect(')')?;
        p.expect('/')?;
        p.expect('(')?;
        let den = p.poly()?;
        p.expect(')')?;
        p.finish()?;
        RationalFunction::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn round_trips() {
        let v = Variables::numbered("X", 3);
        for s in ["0", "1", "-X1^2 + 1", "-X2 + 7 + 3/2*X1*X3^-2", "X1^-1*X2^4", "-1/3"] {
            let p = LaurentPolynomial::parse(s, &v).unwrap();
            assert_eq!(p.to_string(), s);
        }
        let f = RationalFunction::parse("(X1 + 1)/(2*X2 + 2)", &v).unwrap();
        assert_eq!(f.to_string(), "(1/2*X1 + 1/2)/(X2 + 1)");
        assert_eq!(RationalFunction::parse(&f.to_string(), &v).unwrap(), f);
    }

    #[test]
    fn accepts_loose_forms() {
        let v = Variables::numbered("X", 2);
        let p = LaurentPolynomial::parse(" 2 * X1 * X1 -X2^ -1+ 1/2 ", &v).unwrap();
        let x1 = LaurentPolynomial::var(&v, 0);
        let x2 = LaurentPolynomial::var(&v, 1);
        let want = &(&x1.pow(2).scale(&rat(2, 1)) - &x2.powi(-1).unwrap())
            + &LaurentPolynomial::constant(&v, rat(1, 2));
        assert_eq!(p, want);
    }

    #[test]
    fn rejects_garbage() {
        let v = Variables::numbered("X", 2);
        assert!(LaurentPolynomial::parse("X3", &v).is_err());
        assert!(LaurentPolynomial::parse("X1 +", &v).is_err());
        assert!(LaurentPolynomial::parse("1/0", &v).is_err());
        assert!(LaurentPolynomial::parse("X1 X2", &v).is_err());
        assert!(RationalFunction::parse("(X1)/(0)", &v).is_err());
    }
}
