//! Generalized minors and the Gauss decomposition `g = [g]_- [g]_0 [g]_+`.

use super::{wbar, GroupError};
use crate::algebra::Scalar;
use crate::cartan::{DoubleReducedWord, WeylWord};
use crate::matrix::Matrix;

/// `Δ^{ω_i}_{u,v}(g) = Δ^{ω_i}(ū^{-1} g v̄)`, the leading principal `i × i` minor.
/// `ū` is a signed permutation matrix, so `ū^{-1} = ū^t`.
pub fn generalized_minor<F: Scalar>(g: &Matrix<F>, i: usize, u: &WeylWord, v: &WeylWord) -> Result<F, GroupError> {
    let n = g.rows();
    let proto = g.get(0, 0);
    let h = wbar(n, u, proto)?.transpose().mul(g).mul(&wbar(n, v, proto)?);
    Ok(h.leading_minor(i))
}

/// `A_k = Δ^{ω_{|i_k|}}_{u_{≤k}, v_{>k}}(g)` for k in `−1, …, −r, 1, …, m`.
pub fn word_cluster_variables<F: Scalar>(g: &Matrix<F>, word: &DoubleReducedWord) -> Result<Vec<F>, GroupError> {
    word.indices().into_iter().map(|k| generalized_minor(g, word.node(k), &word.u_le(k), &word.v_gt(k))).collect()
}

/// Unitriangular lower, diagonal and unitriangular upper parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Ldu<F: Scalar> {
    pub lower: Matrix<F>,
    pub diagonal: Matrix<F>,
    pub upper: Matrix<F>,
}

impl<F: Scalar> Ldu<F> {
    pub fn product(&self) -> Matrix<F> {
        self.lower.mul(&self.diagonal).mul(&self.upper)
    }
}

/// Elimination without pivoting; fails exactly when a leading principal minor vanishes.
pub fn ldu<F: Scalar>(g: &Matrix<F>) -> Result<Ldu<F>, GroupError> {
    assert!(g.is_square(), "Gauss decomposition of a non-square matrix");
    let n = g.rows();
    let proto = g.get(0, 0);
    let mut a = g.clone();
    let mut lower = Matrix::identity_like(n, proto);
    for c in 0..n {
        let piv = a.get(c, c).clone();
        if piv.is_zero() {
            return Err(GroupError::Genericity { minor: c + 1 });
        }
        for r in c + 1..n {
            let f = a.get(r, c).checked_div(&piv)?;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let v = a.get(r, k).sub(&f.mul(a.get(c, k)));
                a.set(r, k, v);
            }
            lower.set(r, c, f);
        }
    }
    let zero = proto.zero_like();
    let diagonal = Matrix::from_fn(n, n, |i, j| if i == j { a.get(i, i).clone() } else { zero.clone() });
    let mut upper = Matrix::identity_like(n, proto);
    for i in 0..n {
        for j in i + 1..n {
            upper.set(i, j, a.get(i, j).checked_div(a.get(i, i))?);
        }
    }
    Ok(Ldu { lower, diagonal, upper })
}
