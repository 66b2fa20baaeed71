//! The involutions ι, θ and the twist map `τ: G^{u,v} → G^{u,v}`.

use super::{e_factor, f_factor, ldu, wbar, wdoublebar, GroupError};
use crate::algebra::{RationalFunction, Scalar, Variables};
use crate::cartan::WeylWord;
use crate::matrix::Matrix;

fn d0<F: Scalar>(n: usize, proto: &F) -> Matrix<F> {
    let one = proto.one_like();
    let zero = proto.zero_like();
    Matrix::from_fn(n, n, |i, j| match (i == j, i % 2 == 0) {
        (true, true) => one.clone(),
        (true, false) => one.neg(),
        _ => zero.clone(),
    })
}

/// `ι(g) = d₀ g^{-1} d₀`, `d₀ = diag(1, −1, 1, …)`: the anti-automorphism fixing
/// every `E_i(t)`, `F_i(t)` and inverting the torus.
pub fn iota<F: Scalar>(g: &Matrix<F>) -> Result<Matrix<F>, GroupError> {
    let d = d0(g.rows(), g.get(0, 0));
    Ok(d.mul(&g.inverse()?).mul(&d))
}

/// `θ(g) = d₀ (g^t)^{-1} d₀`: the automorphism swapping `E_i(t) ↔ F_i(t)` and
/// inverting the torus.
pub fn theta<F: Scalar>(g: &Matrix<F>) -> Result<Matrix<F>, GroupError> {
    let d = d0(g.rows(), g.get(0, 0));
    Ok(d.mul(&g.transpose().inverse()?).mul(&d))
}

/// `τ(g) = ([u̿ g^ι]_-^{-1} · u̿ g^ι v̄ · [g^ι v̄]_+^{-1})^θ`.
pub fn twist_uv<F: Scalar>(g: &Matrix<F>, u: &WeylWord, v: &WeylWord) -> Result<Matrix<F>, GroupError> {
    let n = g.rows();
    let proto = g.get(0, 0);
    let gi = iota(g)?;
    let left = wdoublebar(n, u, proto)?.mul(&gi);
    let right = gi.mul(&wbar(n, v, proto)?);
    let lower = ldu(&left)?.lower.inverse()?;
    let upper = ldu(&right)?.upper.inverse()?;
    let core = lower.mul(&left).mul(&wbar(n, v, proto)?).mul(&upper);
    theta(&core)
}

/// The twist for `u = v = c = s_1 ⋯ s_{n-1}`.
pub fn twist<F: Scalar>(g: &Matrix<F>) -> Result<Matrix<F>, GroupError> {
    let c = WeylWord::coxeter(g.rows() - 1);
    twist_uv(g, &c, &c)
}

/// Generator-level behaviour of the closed forms of ι and θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionCheck {
    pub n: usize,
    /// `ι(E_i(t)) = E_i(t)`, `ι(F_i(t)) = F_i(t)`, `ι(a) = a^{-1}`.
    pub iota_on_generators: bool,
    /// `θ(E_i(t)) = F_i(t)`, `θ(F_i(t)) = E_i(t)`, `θ(a) = a^{-1}`.
    pub theta_on_generators: bool,
    /// `ι(gh) = ι(h)ι(g)` and `θ(gh) = θ(g)θ(h)` on symbolic products.
    pub compatible_with_products: bool,
    /// `ι² = θ² = id`.
    pub involutive: bool,
}

impl InvolutionCheck {
    pub fn passed(&self) -> bool {
        self.iota_on_generators && self.theta_on_generators && self.compatible_with_products && self.involutive
    }
}

/// Checks ι and θ in `SL_n` with symbolic parameters.
pub fn check_involution_axioms(n: usize) -> Result<InvolutionCheck, GroupError> {
    if n < 2 {
        return Err(GroupError::Size(n));
    }
    let mut names = vec!["t".to_string(), "s".to_string()];
    names.extend((1..=n).map(|i| format!("h{i}")));
    let vars = Variables::new(names);
    let t = RationalFunction::var(&vars, 0);
    let s = RationalFunction::var(&vars, 1);
    let zero = t.zero_like();
    let torus = Matrix::from_fn(n, n, |i, j| if i == j { RationalFunction::var(&vars, 2 + i) } else { zero.clone() });
    let torus_inv = torus.inverse()?;

    let mut iota_ok = iota(&torus)? == torus_inv;
    let mut theta_ok = theta(&torus)? == torus_inv;
    for i in 1..n {
        let e = e_factor(n, i, &t)?;
        let f = f_factor(n, i, &t)?;
        iota_ok &= iota(&e)? == e && iota(&f)? == f;
        theta_ok &= theta(&e)? == f && theta(&f)? == e;
    }

    let g = e_factor(n, 1, &t)?.mul(&f_factor(n, n - 1, &s)?).mul(&torus);
    let h = f_factor(n, 1, &s)?.mul(&torus).mul(&e_factor(n, n - 1, &t)?);
    let gh = g.mul(&h);
    let products = iota(&gh)? == iota(&h)?.mul(&iota(&g)?) && theta(&gh)? == theta(&g)?.mul(&theta(&h)?);
    let involutive = iota(&iota(&g)?)? == g && theta(&theta(&g)?)? == g;

    Ok(InvolutionCheck {
        n,
        iota_on_generators: iota_ok,
        theta_on_generators: theta_ok,
        compatible_with_products: products,
        involutive,
    })
}
