//! `SL_n` and `PGL_n` as exact matrices: root subgroups, coweight elements, the
//! Weyl representatives `w̄` and `w̿`, the x-chart of a double reduced word,
//! generalized minors, Gauss decomposition, the involutions ι and θ, the twist
//! map, the factorization mapping, and conjugation invariants.

mod factorization;
mod minors;
mod twist;
mod verify;

use thiserror::Error;

use crate::algebra::{AlgebraError, Scalar};
use crate::cartan::{catalog, CartanData, CartanError, DoubleReducedWord, Family, FiniteType, TypeTag, WeylWord};
use crate::matrix::Matrix;
use crate::seeds::SeedError;

pub use factorization::{
    cluster_step, e_first_factors, e_then_f_element, factorization_element, factorization_factors, factorization_step, h_conjugate_projectively,
    characteristic_coefficients, invariant_ratios, FactorizationStep,
};
pub use minors::{generalized_minor, ldu, word_cluster_variables, Ldu};
pub use twist::{check_involution_axioms, iota, theta, twist, twist_uv, InvolutionCheck};
pub use verify::{verify_conservation, verify_ensemble, verify_twist_theorem, Report};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("index {i} out of range for SL_{n}")]
    Index { i: usize, n: usize },
    #[error("SL_n needs n >= 2, got {0}")]
    Size(usize),
    #[error("leading principal minor {minor} vanishes")]
    Genericity { minor: usize },
    #[error("exponent {0} is not integral at the sampled point")]
    NonIntegralExponent(String),
    #[error("expected {expected} coordinates, got {found}")]
    Shape { expected: usize, found: usize },
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Cartan data of `A_{n-1}`.
pub fn type_a(n: usize) -> Result<CartanData, GroupError> {
    if n < 2 {
        return Err(GroupError::Size(n));
    }
    Ok(catalog(TypeTag::Finite(FiniteType::new(Family::A, n - 1)?))?)
}

fn check_index(n: usize, i: usize) -> Result<(), GroupError> {
    if (1..n).contains(&i) {
        Ok(())
    } else {
        Err(GroupError::Index { i, n })
    }
}

/// `E_i(t) = Id + t·e_{i,i+1}`.
pub fn e_factor<F: Scalar>(n: usize, i: usize, t: &F) -> Result<Matrix<F>, GroupError> {
    check_index(n, i)?;
    let mut m = Matrix::identity_like(n, t);
    m.set(i - 1, i, t.clone());
    Ok(m)
}

/// `F_i(t) = Id + t·e_{i+1,i}`.
pub fn f_factor<F: Scalar>(n: usize, i: usize, t: &F) -> Result<Matrix<F>, GroupError> {
    check_index(n, i)?;
    let mut m = Matrix::identity_like(n, t);
    m.set(i, i - 1, t.clone());
    Ok(m)
}

/// `E_{±i}(t)` for a signed letter.
pub fn signed_factor<F: Scalar>(n: usize, letter: i64, t: &F) -> Result<Matrix<F>, GroupError> {
    let i = letter.unsigned_abs() as usize;
    if letter > 0 {
        e_factor(n, i, t)
    } else {
        f_factor(n, i, t)
    }
}

/// `m ← m·E_{±i}(1)` as a column operation.
pub(crate) fn push_signed(m: &mut Matrix<impl Scalar>, letter: i64) {
    let i = letter.unsigned_abs() as usize;
    let (src, dst) = if letter > 0 { (i - 1, i) } else { (i, i - 1) };
    for row in 0..m.rows() {
        if !m.get(row, src).is_zero() {
            let v = m.get(row, dst).add(m.get(row, src));
            m.set(row, dst, v);
        }
    }
}

/// `m ← m·diag(a, …, a, b, …, b)` with `a` in the first i slots.
pub(crate) fn push_diagonal<F: Scalar>(m: &mut Matrix<F>, i: usize, a: &F, b: Option<&F>) {
    for row in 0..m.rows() {
        for col in 0..m.cols() {
            let factor = if col < i { Some(a) } else { b };
            if let Some(f) = factor.filter(|_| !m.get(row, col).is_zero()) {
                let v = m.get(row, col).mul(f);
                m.set(row, col, v);
            }
        }
    }
}

/// A lift of `t^{ω_i^∨}` to `GL_n`: `diag(t, …, t, 1, …, 1)` with `t` in the
/// first i slots. It agrees with the true coweight element up to a scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct CoweightPower<F> {
    pub i: usize,
    pub value: F,
}

impl<F: Scalar> CoweightPower<F> {
    pub fn to_matrix(&self, n: usize) -> Result<Matrix<F>, GroupError> {
        check_index(n, self.i)?;
        let one = self.value.one_like();
        let zero = self.value.zero_like();
        Ok(Matrix::from_fn(n, n, |p, q| match (p == q, p < self.i) {
            (true, true) => self.value.clone(),
            (true, false) => one.clone(),
            _ => zero.clone(),
        }))
    }
}

pub fn coweight<F: Scalar>(n: usize, i: usize, t: &F) -> Result<Matrix<F>, GroupError> {
    CoweightPower { i, value: t.clone() }.to_matrix(n)
}

/// The element `(y^n)^{ω_i^∨}` of `SL_n`: `diag(y^{n-i}, …, y^{n-i}, y^{-i}, …, y^{-i})`.
/// Sampling `X = y^n` keeps every coweight power rational.
pub fn special_coweight<F: Scalar>(n: usize, i: usize, y: &F) -> Result<Matrix<F>, GroupError> {
    check_index(n, i)?;
    let hi = y.powi((n - i) as i64)?;
    let lo = y.powi(-(i as i64))?;
    let zero = y.zero_like();
    Ok(Matrix::from_fn(n, n, |p, q| match (p == q, p < i) {
        (true, true) => hi.clone(),
        (true, false) => lo.clone(),
        _ => zero.clone(),
    }))
}

/// `s̄_i = E_i(-1) F_i(1) E_i(-1)`: the block `[[0,-1],[1,0]]` at rows `i, i+1`.
pub fn sbar<F: Scalar>(n: usize, i: usize, proto: &F) -> Result<Matrix<F>, GroupError> {
    let one = proto.one_like();
    let e = e_factor(n, i, &one.neg())?;
    Ok(e.mul(&f_factor(n, i, &one)?).mul(&e))
}

/// `s̿_i = F_i(-1) E_i(1) F_i(-1) = s̄_i^{-1}`.
pub fn sdoublebar<F: Scalar>(n: usize, i: usize, proto: &F) -> Result<Matrix<F>, GroupError> {
    let one = proto.one_like();
    let f = f_factor(n, i, &one.neg())?;
    Ok(f.mul(&e_factor(n, i, &one)?).mul(&f))
}

/// `w̄ = s̄_{a_1} ⋯ s̄_{a_k}` for the word `a`.
pub fn wbar<F: Scalar>(n: usize, w: &WeylWord, proto: &F) -> Result<Matrix<F>, GroupError> {
    let mut out = Matrix::identity_like(n, proto);
    for &a in w.letters() {
        out = out.mul(&sbar(n, a, proto)?);
    }
    Ok(out)
}

pub fn wdoublebar<F: Scalar>(n: usize, w: &WeylWord, proto: &F) -> Result<Matrix<F>, GroupError> {
    let mut out = Matrix::identity_like(n, proto);
    for &a in w.letters() {
        out = out.mul(&sdoublebar(n, a, proto)?);
    }
    Ok(out)
}

/// A group element; `projective` marks a `GL_n` lift of a `PGL_n` element.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<F: Scalar> {
    matrix: Matrix<F>,
    projective: bool,
}

impl<F: Scalar> GroupElement<F> {
    pub fn new(matrix: Matrix<F>, projective: bool) -> Self {
        assert!(matrix.is_square(), "group elements are square");
        GroupElement { matrix, projective }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.matrix
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// Equality up to a nonzero scalar when either side is projective.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.projective || other.projective {
            projectively_equal(&self.matrix, &other.matrix)
        } else {
            self.matrix == other.matrix
        }
    }
}

/// `a = λb` for some nonzero λ.
pub fn projectively_equal<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let Some(p) = a.entries().iter().position(|x| !x.is_zero()) else {
        return b.entries().iter().all(Scalar::is_zero);
    };
    let Ok(lambda) = b.entries()[p].checked_div(&a.entries()[p]) else { return false };
    !lambda.is_zero() && a.entries().iter().zip(b.entries()).all(|(x, y)| x.mul(&lambda) == *y)
}

/// `(a, b)` with `diag(a, …, a, b, …, b)` the `i`-th coweight power of `t`.
type PowerFn<'a, F> = &'a dyn Fn(usize, &F) -> Result<(F, Option<F>), GroupError>;

fn chart<F: Scalar>(word: &DoubleReducedWord, n: usize, coords: &[F], power: PowerFn<'_, F>) -> Result<Matrix<F>, GroupError> {
    let r = word.rank();
    if r + 1 != n {
        return Err(GroupError::Shape { expected: r + 1, found: n });
    }
    let expected = r + word.len();
    if coords.len() != expected {
        return Err(GroupError::Shape { expected, found: coords.len() });
    }
    let mut g = Matrix::identity_like(n, &coords[0]);
    let push_power = |g: &mut Matrix<F>, i: usize, t: &F| -> Result<(), GroupError> {
        let (a, b) = power(i, t)?;
        push_diagonal(g, i, &a, b.as_ref());
        Ok(())
    };
    // X_{-r}^{ω_r^∨} ⋯ X_{-1}^{ω_1^∨}; coordinates are listed −1, …, −r.
    for i in (1..=r).rev() {
        push_power(&mut g, i, &coords[i - 1])?;
    }
    for (p, &letter) in word.entries().iter().enumerate() {
        push_signed(&mut g, letter);
        push_power(&mut g, letter.unsigned_abs() as usize, &coords[r + p])?;
    }
    Ok(g)
}

fn gl_power<F: Scalar>(t: &F) -> Result<(F, Option<F>), GroupError> {
    Ok((t.clone(), None))
}

fn sl_power<F: Scalar>(n: usize, i: usize, y: &F) -> Result<(F, Option<F>), GroupError> {
    Ok((y.powi((n - i) as i64)?, Some(y.powi(-(i as i64))?)))
}

/// `x_𝐢(X) = X_{-r}^{ω_r^∨} ⋯ X_{-1}^{ω_1^∨} E_{i_1} X_1^{ω_{|i_1|}^∨} ⋯ E_{i_m} X_m^{ω_{|i_m|}^∨}`
/// with coordinates in the order `−1, …, −r, 1, …, m`, as a projective element.
pub fn x_chart<F: Scalar>(word: &DoubleReducedWord, n: usize, x: &[F]) -> Result<GroupElement<F>, GroupError> {
    Ok(GroupElement::new(chart(word, n, x, &|_, t| gl_power(t))?, true))
}

/// The lift of `x_𝐢(y_{-r}^n, …, y_m^n)` to `SL_n` built from [`special_coweight`].
pub fn special_x_chart<F: Scalar>(word: &DoubleReducedWord, n: usize, y: &[F]) -> Result<GroupElement<F>, GroupError> {
    Ok(GroupElement::new(chart(word, n, y, &|i, t| sl_power(n, i, t))?, false))
}
