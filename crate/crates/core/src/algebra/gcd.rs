//! Multivariate polynomial GCD.
//!
//! The heuristic evaluation GCD (integer evaluation, recursive GCD, then
//! ξ-adic reconstruction checked by trial division) handles almost every input;
//! the recursive content and primitive-PRS algorithm is the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPolynomial;
use super::monomial::Monomial;
use super::rational::{denominator_lcm, Rational};

/// Writes `p = m · q` with `q` a polynomial having no monomial factor.
pub fn split_monomial(p: &LaurentPolynomial) -> (Monomial, LaurentPolynomial) {
    let m = p.min_exponents();
    if m.is_one() {
        return (m, p.clone());
    }
    let q = p.mul_term(&m.inverse(), &Rational::one());
    (m, q)
}

/// Writes `p = c · q` with `q` integral, primitive, and with positive leading coefficient.
pub(crate) fn primitive_part(p: &LaurentPolynomial) -> (Rational, LaurentPolynomial) {
    let Some((_, lc)) = p.leading_term() else {
        return (Rational::one(), p.clone());
    };
    let l = denominator_lcm(p.terms().map(|(_, c)| c));
    let g = p
        .terms()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * (&l / c.denom()))));
    let mut c = Rational::new(g, l);
    if lc.is_negative() {
        c = -c;
    }
    let q = p.scale(&c.recip());
    (c, q)
}

fn normalized(p: &LaurentPolynomial) -> LaurentPolynomial {
    primitive_part(p).1
}

/// Greatest common divisor of two polynomials, normalized by [`primitive_part`].
/// Monomial factors are included; exponents must be nonnegative.
pub fn poly_gcd(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    if a.is_zero() {
        return normalized(b);
    }
    if b.is_zero() {
        return normalized(a);
    }
    let (ma, a0) = split_monomial(a);
    let (mb, b0) = split_monomial(b);
    let m = ma.gcd(&mb);
    if a0.constant_value().is_some() || b0.constant_value().is_some() {
        return LaurentPolynomial::monomial(a.variables(), m, Rational::one());
    }
    let (_, a0) = primitive_part(&a0);
    let (_, b0) = primitive_part(&b0);
    let g = match heuristic_gcd(&a0, &b0) {
        Some(g) => normalized(&g),
        None => gcd_no_monomial(&a0, &b0),
    };
    g.mul_term(&m, &Rational::one())
}

const HEU_ATTEMPTS: usize = 6;

fn max_norm(p: &LaurentPolynomial) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn integer_content(p: &LaurentPolynomial) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

/// `p` with variable `v` set to the integer `xi`.
fn substitute(p: &LaurentPolynomial, v: usize, xi: &BigInt) -> LaurentPolynomial {
    let terms = p.terms().map(|(m, c)| {
        let e = m.exponents()[v];
        let mut k = m.clone();
        k.0[v] = 0;
        (k, c * Rational::from_integer(num_traits::pow(xi.clone(), e as usize)))
    });
    LaurentPolynomial::from_terms(p.variables(), terms)
}

/// Inverse of [`substitute`] on polynomials whose coefficients are small
/// relative to `xi`: reads off symmetric ξ-adic digits as powers of variable `v`.
fn interpolate(h: &LaurentPolynomial, v: usize, xi: &BigInt) -> Option<LaurentPolynomial> {
    if h.terms().any(|(_, c)| !c.is_integer()) {
        return None;
    }
    let vars = h.variables();
    let half = xi / 2;
    let mut rest = h.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while !rest.is_zero() {
        let digit = LaurentPolynomial::from_terms(
            vars,
            rest.terms().map(|(m, c)| {
                let mut r = c.numer().mod_floor(xi);
                if r > half {
                    r -= xi;
                }
                (m.clone(), Rational::from_integer(r))
            }),
        );
        for (m, c) in digit.terms() {
            let mut k = m.clone();
            k.0[v] = i;
            out.push((k, c.clone()));
        }
        rest = (&rest - &digit).scale(&Rational::from_integer(xi.clone()).recip());
        i += 1;
    }
    Some(LaurentPolynomial::from_terms(vars, out))
}

fn divides(h: &LaurentPolynomial, f: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    if h.is_zero() {
        return None;
    }
    f.poly_div_exact(h)
}

/// GCD of integral polynomials up to sign, or `None` when every evaluation
/// point fails.
fn heuristic_gcd(f: &LaurentPolynomial, g: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    let vars = f.variables();
    if f.is_zero() {
        return Some(g.clone());
    }
    if g.is_zero() {
        return Some(f.clone());
    }
    let c = integer_content(f).gcd(&integer_content(g));
    let cq = Rational::from_integer(c.clone()).recip();
    let (f, g) = (f.scale(&cq), g.scale(&cq));
    let mut support = f.support();
    for v in g.support() {
        if !support.contains(&v) {
            support.push(v);
        }
    }
    let Some(&v) = support.iter().max() else {
        let n = integer_content(&f).gcd(&integer_content(&g)) * c;
        return Some(LaurentPolynomial::constant(vars, Rational::from_integer(n)));
    };
    let scale_back = |h: LaurentPolynomial| h.scale(&Rational::from_integer(c.clone()));
    let fnorm = max_norm(&f);
    let gnorm = max_norm(&g);
    // ξ > 2·min(|f|, |g|) + 1 makes a verified reconstruction the true GCD.
    let mut xi: BigInt = BigInt::from(2) * fnorm.min(gnorm) + 29;
    for _ in 0..HEU_ATTEMPTS {
        let ff = substitute(&f, v, &xi);
        let gg = substitute(&g, v, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            let hh = heuristic_gcd(&ff, &gg)?;
            let h = primitive_part(&interpolate(&hh, v, &xi)?).1;

            if let (Some(_), Some(_)) = (divides(&h, &f), divides(&h, &g)) {
                return Some(scale_back(h));
            }
            for (side, other, whole) in [(&ff, &g, &f), (&gg, &f, &g)] {
                if let Some(cof) = side.poly_div_exact(&hh).and_then(|q| interpolate(&q, v, &xi)) {
                    let cof = primitive_part(&cof).1;
                    if let Some(h) = divides(&cof, whole) {
                        if divides(&h, other).is_some() {
                            return Some(scale_back(h));
                        }
                    }
                }
            }
        }
        xi = &xi * BigInt::from(73794) * xi.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

fn gcd_no_monomial(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    let vars = a.variables();
    if a.constant_value().is_some() || b.constant_value().is_some() {
        return LaurentPolynomial::one(vars);
    }
    if a.poly_div_exact(b).is_some() {
        return normalized(b);
    }
    if b.poly_div_exact(a).is_some() {
        return normalized(a);
    }
    let sa = a.support();
    let sb = b.support();
    if let Some(&x) = sa.iter().find(|x| !sb.contains(x)) {
        return gcd_no_monomial(&content_in(a, x), b);
    }
    if let Some(&x) = sb.iter().find(|x| !sa.contains(x)) {
        return gcd_no_monomial(a, &content_in(b, x));
    }
    let x = sa[0];
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let pa = a.poly_div_exact(&ca).expect("content divides");
    let pb = b.poly_div_exact(&cb).expect("content divides");
    let c = gcd_no_monomial(&ca, &cb);
    let g = primitive_prs(pa, pb, x);
    normalized(&(&c * &g))
}

/// GCD of the coefficients of `p` viewed as a polynomial in variable `x`.
fn content_in(p: &LaurentPolynomial, x: usize) -> LaurentPolynomial {
    let mut coeffs = p.coefficients_in(x).into_values();
    let mut g = normalized(&coeffs.next().expect("nonzero"));
    for c in coeffs {
        if g.constant_value().is_some() {
            break;
        }
        let (mc, c0) = split_monomial(&c);
        let (mg, g0) = split_monomial(&g);
        g = gcd_no_monomial(&g0, &c0).mul_term(&mg.gcd(&mc), &Rational::one());
    }
    g
}

fn primitive_in(p: &LaurentPolynomial, x: usize) -> LaurentPolynomial {
    let c = content_in(p, x);
    normalized(&p.poly_div_exact(&c).expect("content divides"))
}

fn leading_coeff_in(p: &LaurentPolynomial, x: usize) -> (i32, LaurentPolynomial) {
    let (d, c) = p.coefficients_in(x).into_iter().next_back().expect("nonzero");
    (d, c)
}

/// Primitive polynomial remainder sequence in `x` for polynomials primitive in `x`.
fn primitive_prs(mut f: LaurentPolynomial, mut g: LaurentPolynomial, x: usize) -> LaurentPolynomial {
    if f.degree_in(x) < g.degree_in(x) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_remainder(&f, &g, x);
        if r.is_zero() {
            return normalized(&g);
        }
        if r.degree_in(x) == Some(0) {
            return LaurentPolynomial::one(f.variables());
        }
        f = g;
        g = primitive_in(&r, x);
    }
}

fn pseudo_remainder(f: &LaurentPolynomial, g: &LaurentPolynomial, x: usize) -> LaurentPolynomial {
    let (dg, lg) = leading_coeff_in(g, x);
    let n = f.nvars();
    let mut r = f.clone();
    while !r.is_zero() {
        let (dr, lr) = leading_coeff_in(&r, x);
        if dr < dg {
            break;
        }
        let mut shift = Monomial::one(n);
        shift.0[x] = dr - dg;
        let sub = &lr * &g.mul_term(&shift, &Rational::one());
        r = &(&lg * &r) - &sub;
        r = normalized(&r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Variables};

    #[test]
    fn recovers_common_factor() {
        let v = Variables::numbered("X", 3);
        let x = |i| LaurentPolynomial::var(&v, i);
        let one = LaurentPolynomial::one(&v);
        let common = &(&x(0) * &x(1)) + &(&x(2) + &one);
        let a = &common * &(&x(0) - &x(1));
        let b = &common * &(&(&x(0) * &x(0)) + &x(2));
        assert_eq!(poly_gcd(&a, &b), common);
        let c = &x(1) + &LaurentPolynomial::constant(&v, int(5));
        assert!(poly_gcd(&a, &c).is_one());
    }

    #[test]
    fn monomial_factors_and_scalars() {
        let v = Variables::numbered("X", 2);
        let x = |i| LaurentPolynomial::var(&v, i);
        let one = LaurentPolynomial::one(&v);
        let a = (&x(0) * &x(0)) * (&x(1) + &one).scale(&int(6));
        let b = (&x(0) * &x(1)) * (&x(1) + &one).scale(&int(-4));
        assert_eq!(poly_gcd(&a, &b), &x(0) * &(&x(1) + &one));
    }

    #[test]
    fn univariate_euclid() {
        let v = Variables::numbered("t", 1);
        let t = LaurentPolynomial::var(&v, 0);
        let one = LaurentPolynomial::one(&v);
        let a = &t.pow(4) - &one;
        let b = &t.pow(6) - &one;
        assert_eq!(poly_gcd(&a, &b), &t.pow(2) - &one);
    }
}
