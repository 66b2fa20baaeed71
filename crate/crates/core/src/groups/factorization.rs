//! The factorization mapping on `PGL_n`: `g = P·Q ↦ Q·P`, and the conjugation
//! invariants it preserves.

use super::{push_diagonal, push_signed, GroupError};
use crate::algebra::{AlgebraError, Scalar};
use crate::cartan::{build_sigma_c, SigmaC};
use crate::matrix::Matrix;
use crate::seeds::{cluster_automorphism, Flavor, TorusPoint};

fn check_len(n: usize, x: &[impl Sized]) -> Result<usize, GroupError> {
    if n < 2 {
        return Err(GroupError::Size(n));
    }
    let r = n - 1;
    if x.len() != 2 * r {
        return Err(GroupError::Shape { expected: 2 * r, found: x.len() });
    }
    Ok(r)
}

/// `(P, Q) = (∏_i F_i X_i^{ω_i^∨}, ∏_i E_i X_{i+r}^{ω_i^∨})`, products over `i = 1, …, r`.
pub fn factorization_factors<F: Scalar>(n: usize, x: &[F]) -> Result<(Matrix<F>, Matrix<F>), GroupError> {
    let r = check_len(n, x)?;
    let mut p = Matrix::identity_like(n, &x[0]);
    let mut q = p.clone();
    for i in 1..=r {
        push_signed(&mut p, -(i as i64));
        push_diagonal(&mut p, i, &x[i - 1], None);
        push_signed(&mut q, i as i64);
        push_diagonal(&mut q, i, &x[i + r - 1], None);
    }
    Ok((p, q))
}

/// `g(X) = P·Q`, a `GL_n` lift of a point of `PGL_n`.
pub fn factorization_element<F: Scalar>(n: usize, x: &[F]) -> Result<Matrix<F>, GroupError> {
    let (p, q) = factorization_factors(n, x)?;
    Ok(p.mul(&q))
}

/// `(∏_i E_i X_i^{ω_i^∨}, ∏_i F_i X_{i+r}^{ω_i^∨})`.
pub fn e_first_factors<F: Scalar>(n: usize, x: &[F]) -> Result<(Matrix<F>, Matrix<F>), GroupError> {
    let r = check_len(n, x)?;
    let mut e = Matrix::identity_like(n, &x[0]);
    let mut f = e.clone();
    for i in 1..=r {
        push_signed(&mut e, i as i64);
        push_diagonal(&mut e, i, &x[i - 1], None);
        push_signed(&mut f, -(i as i64));
        push_diagonal(&mut f, i, &x[i + r - 1], None);
    }
    Ok((e, f))
}

/// `(∏_i E_i X_i^{ω_i^∨})(∏_i F_i X_{i+r}^{ω_i^∨})`.
pub fn e_then_f_element<F: Scalar>(n: usize, x: &[F]) -> Result<Matrix<F>, GroupError> {
    let (e, f) = e_first_factors(n, x)?;
    Ok(e.mul(&f))
}

/// Whether `h a h^{-1} = λ b` for some diagonal `h` and scalar `λ`, both invertible.
pub fn h_conjugate_projectively<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    let n = a.rows();
    if !a.is_square() || b.rows() != n || b.cols() != n {
        return false;
    }
    // Zero patterns must agree since conjugation by h rescales entries.
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j).is_zero() != b.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let Some(d) = (0..n).find(|&i| !a.get(i, i).is_zero()) else { return false };
    let Ok(lambda) = a.get(d, d).checked_div(b.get(d, d)) else { return false };
    // h_i / h_j = λ b_ij / a_ij along nonzero entries, spread from h_0 = 1.
    let proto = a.get(0, 0);
    let mut h: Vec<Option<F>> = vec![None; n];
    h[0] = Some(proto.one_like());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let hi = h[i].clone().expect("assigned before push");
        for j in 0..n {
            let hj = if !a.get(i, j).is_zero() {
                // h_j = h_i a_ij / (λ b_ij)
                hi.mul(a.get(i, j)).checked_div(&lambda.mul(b.get(i, j)))
            } else if !a.get(j, i).is_zero() {
                hi.mul(&lambda).mul(b.get(j, i)).checked_div(a.get(j, i))
            } else {
                continue;
            };
            let Ok(hj) = hj else { return false };
            if h[j].is_none() {
                h[j] = Some(hj);
                stack.push(j);
            }
        }
    }
    let Some(h) = h.into_iter().collect::<Option<Vec<F>>>() else { return false };
    (0..n).all(|i| {
        (0..n).all(|j| match h[i].mul(a.get(i, j)).checked_div(&h[j]) {
            Ok(lhs) => lhs == lambda.mul(b.get(i, j)),
            Err(_) => false,
        })
    })
}

/// Similar upper Hessenberg matrix, by elimination below the subdiagonal.
/// Columns that are already in shape are left alone, so tridiagonal input
/// costs nothing.
fn hessenberg<F: Scalar>(g: &Matrix<F>) -> Matrix<F> {
    let n = g.rows();
    let mut a = g.clone();
    for c in 0..n.saturating_sub(2) {
        if (c + 2..n).all(|r| a.get(r, c).is_zero()) {
            continue;
        }
        if a.get(c + 1, c).is_zero() {
            let p = (c + 2..n).find(|&r| !a.get(r, c).is_zero()).expect("nonzero entry below the subdiagonal");
            for j in 0..n {
                let (x, y) = (a.get(p, j).clone(), a.get(c + 1, j).clone());
                a.set(p, j, y);
                a.set(c + 1, j, x);
            }
            for i in 0..n {
                let (x, y) = (a.get(i, p).clone(), a.get(i, c + 1).clone());
                a.set(i, p, y);
                a.set(i, c + 1, x);
            }
        }
        let piv = a.get(c + 1, c).clone();
        for r in c + 2..n {
            if a.get(r, c).is_zero() {
                continue;
            }
            let f = a.get(r, c).checked_div(&piv).expect("nonzero pivot");
            // Row r −= f·row (c+1), then column (c+1) += f·column r.
            for j in 0..n {
                let v = a.get(r, j).sub(&f.mul(a.get(c + 1, j)));
                a.set(r, j, v);
            }
            for i in 0..n {
                let v = a.get(i, c + 1).add(&f.mul(a.get(i, r)));
                a.set(i, c + 1, v);
            }
        }
    }
    a
}

/// Coefficients `e_0, …, e_n` of `det(t − g) = Σ_k (−1)^k e_k t^{n−k}`, through
/// the Hessenberg recurrence for the leading characteristic polynomials
/// `p_k = (t − h_kk) p_{k−1} − Σ_{i<k} h_ik (h_{i+1,i} ⋯ h_{k,k−1}) p_{i−1}`.
pub fn characteristic_coefficients<F: Scalar>(g: &Matrix<F>) -> Vec<F> {
    assert!(g.is_square(), "characteristic polynomial of a non-square matrix");
    let n = g.rows();
    let h = hessenberg(g);
    let proto = g.get(0, 0);
    let zero = proto.zero_like();
    // p[k] holds ascending coefficients of p_k.
    let mut p: Vec<Vec<F>> = vec![vec![proto.one_like()]];
    for k in 1..=n {
        let hkk = h.get(k - 1, k - 1);
        let prev = &p[k - 1];
        let mut next = vec![zero.clone(); k + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = next[d + 1].add(c);
            if !hkk.is_zero() {
                next[d] = next[d].sub(&c.mul(hkk));
            }
        }
        let mut chain = proto.one_like();
        for i in (1..k).rev() {
            chain = chain.mul(h.get(i, i - 1));
            if chain.is_zero() {
                break;
            }
            let hik = h.get(i - 1, k - 1);
            if hik.is_zero() {
                continue;
            }
            let w = hik.mul(&chain);
            for (d, c) in p[i - 1].iter().enumerate() {
                next[d] = next[d].sub(&c.mul(&w));
            }
        }
        p.push(next);
    }
    let top = &p[n];
    (0..=n).map(|k| if k % 2 == 0 { top[n - k].clone() } else { top[n - k].neg() }).collect()
}

/// `I_k = e_k^n / e_n^k` for `k = 1, …, n-1`: conjugation invariants of `GL_n`
/// that are also blind to scalars, hence functions on `PGL_n`.
pub fn invariant_ratios<F: Scalar>(g: &Matrix<F>) -> Result<Vec<F>, GroupError> {
    assert!(g.is_square(), "invariants of a non-square matrix");
    let n = g.rows();
    let e = characteristic_coefficients(g);
    if e[n].is_zero() {
        return Err(AlgebraError::NotInvertible("invariants of a singular matrix".into()).into());
    }
    (1..n).map(|k| Ok(e[k].powi(n as i64)?.checked_div(&e[n].powi(k as i64)?)?)).collect()
}

/// One step of the factorization mapping computed along both routes.
///
/// `g(X)` is regrouped as `(∏E_i X′_i)(∏F_i X′_{i+r})` with `X′ = μ̂(X)`, and the
/// two halves are swapped; relabeling by σ turns the result into `g(μ̂_σ(X))`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationStep<F: Scalar> {
    /// `μ̂_σ(X)` on `Σ_C`.
    pub cluster: Vec<F>,
    /// `g(X)`.
    pub element: Matrix<F>,
    /// `(∏E_i X′_i)(∏F_i X′_{i+r})`, equal to `g(X)` up to the torus.
    pub regrouped: Matrix<F>,
    /// `(∏F_i X′_{i+r})(∏E_i X′_i)`.
    pub swapped: Matrix<F>,
    pub invariants_before: Vec<F>,
    pub invariants_after: Vec<F>,
}

impl<F: Scalar> FactorizationStep<F> {
    /// The regrouping holds up to the torus, the swap is `g(μ̂_σ(X))`, and the
    /// invariants are unchanged.
    pub fn consistent(&self) -> Result<bool, GroupError> {
        let n = self.element.rows();
        Ok(h_conjugate_projectively(&self.element, &self.regrouped)
            && self.swapped == factorization_element(n, &self.cluster)?
            && self.invariants_before == self.invariants_after)
    }
}

/// `μ̂_σ(X)` on `Σ_C` of type `A_{n-1}`.
pub fn cluster_step<F: Scalar>(sigma: &SigmaC, x: &[F]) -> Result<Vec<F>, GroupError> {
    let point = TorusPoint::new(Flavor::X, sigma.seed.indices().to_vec(), x.to_vec())?;
    Ok(cluster_automorphism(&sigma.seed, &sigma.sequence, &sigma.sigma, &point, false)?.values().to_vec())
}

pub fn factorization_step<F: Scalar>(n: usize, x: &[F]) -> Result<FactorizationStep<F>, GroupError> {
    let r = check_len(n, x)?;
    let sigma = build_sigma_c(&super::type_a(n)?)?;
    let cluster = cluster_step(&sigma, x)?;
    // Undo σ to recover μ̂(X).
    let mutated: Vec<F> = (0..2 * r).map(|p| cluster[(p + r) % (2 * r)].clone()).collect();
    let element = factorization_element(n, x)?;
    let (e, f) = e_first_factors(n, &mutated)?;
    let swapped = f.mul(&e);
    Ok(FactorizationStep {
        invariants_before: invariant_ratios(&element)?,
        invariants_after: invariant_ratios(&swapped)?,
        cluster,
        regrouped: e.mul(&f),
        element,
        swapped,
    })
}
