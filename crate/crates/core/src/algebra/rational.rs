//! Exact rationals and the `p/q` text form used by every serialized matrix.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (guaranteed by `num_rational`).
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(AlgebraError::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// `q^e` for any integer `e`; zero to a negative power is an error.
pub fn pow_rational(q: &Rational, e: i64) -> Result<Rational, AlgebraError> {
    if e < 0 && q.is_zero() {
        return Err(AlgebraError::DivisionByZero("0 raised to a negative power".into()));
    }
    let mag = e.unsigned_abs();
    let mut base = if e < 0 { q.recip() } else { q.clone() };
    let mut acc = Rational::one();
    let mut m = mag;
    while m > 0 {
        if m & 1 == 1 {
            acc *= &base;
        }
        m >>= 1;
        if m > 0 {
            base = &base * &base;
        }
    }
    Ok(acc)
}

/// Returns the value as an `i64` if it is an integer that fits.
pub fn as_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// `max(0, x)`.
pub fn positive_part(x: &Rational) -> Rational {
    if x.is_positive() {
        x.clone()
    } else {
        Rational::zero()
    }
}

/// `min(0, x)`.
pub fn negative_part(x: &Rational) -> Rational {
    if x.is_negative() {
        x.clone()
    } else {
        Rational::zero()
    }
}

/// Least common multiple of the denominators of `qs` (1 for an empty input).
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(rat(2, -4), rat(-1, 2));
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(pow_rational(&rat(2, 3), 3).unwrap(), rat(8, 27));
        assert_eq!(pow_rational(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(pow_rational(&rat(0, 1), 0).unwrap(), int(1));
        assert!(pow_rational(&rat(0, 1), -1).is_err());
    }
}
