//! The matrices N, M and M′ relating untwisted, twisted and mutated cluster
//! variables on the Coxeter double Bruhat cell.

use std::fmt;

use num_traits::Zero;

use super::{build_b_mod, build_word_seed, CartanData, CartanError, DoubleReducedWord, WeightKind, WeightVector, WeylWord};
use crate::algebra::{int, negative_part, Rational};
use crate::matrix::RatMatrix;
use crate::seeds::Label;

/// A square matrix whose rows and columns are indexed by seed labels.
#[derive(Clone, PartialEq)]
pub struct LabeledMatrix {
    labels: Vec<Label>,
    m: RatMatrix,
}

impl LabeledMatrix {
    pub fn new(labels: Vec<Label>, m: RatMatrix) -> Self {
        assert!(m.is_square() && m.rows() == labels.len(), "labels must match the matrix");
        LabeledMatrix { labels, m }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.m
    }

    fn pos(&self, i: Label) -> usize {
        self.labels.iter().position(|&l| l == i).unwrap_or_else(|| panic!("unknown label {i}"))
    }

    /// Panics on an unknown label.
    pub fn get(&self, i: Label, j: Label) -> &Rational {
        self.m.get(self.pos(i), self.pos(j))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.labels, other.labels, "label orders must agree");
        LabeledMatrix::new(self.labels.clone(), self.m.mul(&other.m))
    }

    pub fn neg(&self) -> Self {
        LabeledMatrix::new(self.labels.clone(), self.m.neg())
    }

    pub fn is_identity(&self) -> bool {
        self.m == RatMatrix::identity(self.labels.len())
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

impl fmt::Debug for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}", self.labels, self.m)
    }
}

fn require_finite(cartan: &CartanData) -> Result<(), CartanError> {
    if cartan.is_finite_type() {
        Ok(())
    } else {
        Err(CartanError::Singular)
    }
}

/// Images `w(ω_1), …, w(ω_r)`.
fn images(cartan: &CartanData, w: &WeylWord) -> Result<Vec<WeightVector>, CartanError> {
    let r = cartan.rank();
    (1..=r).map(|i| w.act(cartan, &WeightVector::fundamental(WeightKind::Weight, r, i))).collect()
}

/// `N` over `(-1, …, -r, 1, …, 2r)`:
/// `⟨cω_{|i_j|} | ω_{|i_k|}^∨⟩` for `j > r`, `k < 0`;
/// `⟨c^{-1}ω_{|i_j|} | ω_{|i_k|}^∨⟩` for `j < 0`, `k > r`;
/// `⟨ω_{|i_j|} | ω_{|i_k|}^∨⟩` otherwise.
pub fn twist_matrix_n(cartan: &CartanData) -> Result<LabeledMatrix, CartanError> {
    require_finite(cartan)?;
    let r = cartan.rank();
    let word = DoubleReducedWord::coxeter(cartan);
    let c = WeylWord::coxeter(r);
    let fwd = images(cartan, &c)?;
    let back = images(cartan, &c.inverse())?;
    let plain = images(cartan, &WeylWord::identity())?;
    let labels = word.indices();
    let rl = r as Label;
    let mut m = RatMatrix::zeros(labels.len(), labels.len());
    for (p, &j) in labels.iter().enumerate() {
        for (q, &k) in labels.iter().enumerate() {
            let source = if j > rl && k < 0 {
                &fwd
            } else if j < 0 && k > rl {
                &back
            } else {
                &plain
            };
            let a = source[word.node(j) - 1].root_coords(cartan)?;
            m.set(p, q, a[word.node(k) - 1].clone());
        }
    }
    Ok(LabeledMatrix::new(labels, m))
}

/// `M` over `(-1, …, -r, 1, …, 2r)`:
/// `δ_jk` for `1 ≤ j, k ≤ r`; `⟨cω_{|i_j|} | α_{|i_k|}^∨⟩` for `j > r`, `k < 0`;
/// `⟨c^{-1}ω_{|i_j|} | α_{|i_k|}^∨⟩` for `j < 0`, `k > r`; 0 otherwise.
pub fn twist_matrix_m(cartan: &CartanData) -> Result<LabeledMatrix, CartanError> {
    require_finite(cartan)?;
    let r = cartan.rank();
    let word = DoubleReducedWord::coxeter(cartan);
    let c = WeylWord::coxeter(r);
    let fwd = images(cartan, &c)?;
    let back = images(cartan, &c.inverse())?;
    let labels = word.indices();
    let rl = r as Label;
    let mut m = RatMatrix::zeros(labels.len(), labels.len());
    for (p, &j) in labels.iter().enumerate() {
        for (q, &k) in labels.iter().enumerate() {
            let v = if (1..=rl).contains(&j) && (1..=rl).contains(&k) {
                int(i64::from(j == k))
            } else if j > rl && k < 0 {
                fwd[word.node(j) - 1].coroot_pairing(word.node(k)).clone()
            } else if j < 0 && k > rl {
                back[word.node(j) - 1].coroot_pairing(word.node(k)).clone()
            } else {
                int(0)
            };
            m.set(p, q, v);
        }
    }
    Ok(LabeledMatrix::new(labels, m))
}

/// Row k of `M′` is `2δ_kj − M_kj + [(BM)_kj]_− − Σ_ℓ [B_kℓ]_− M_ℓj`; other rows
/// are those of `M`. Here `[x]_− = min(x, 0)`. The negative part is taken of the
/// whole sum: that is what composing the two mutations with `φ_M` produces.
pub fn m_prime(m: &LabeledMatrix, b: &LabeledMatrix, k: Label) -> LabeledMatrix {
    assert_eq!(m.labels, b.labels, "label orders must agree");
    let mut out = m.m.clone();
    let kp = m.pos(k);
    let n = m.labels.len();
    for j in 0..n {
        let mut bm = int(0);
        let mut v = int(2 * i64::from(j == kp)) - m.m.get(kp, j);
        for l in 0..n {
            let bkl = b.m.get(kp, l);
            if bkl.is_zero() {
                continue;
            }
            let mlj = m.m.get(l, j);
            bm += bkl * mlj;
            v -= negative_part(bkl) * mlj;
        }
        out.set(kp, j, v + negative_part(&bm));
    }
    LabeledMatrix::new(m.labels.clone(), out)
}

/// Hypotheses of the change-of-coefficients lemma for `φ_M: 𝒜_Σ̃ → 𝒜_Σ`:
/// `B̃_ij = (BM)_ij` for unfrozen i, and `M_ij = δ_ij` for unfrozen j.
pub fn satisfies_change_of_coefficients(
    m: &LabeledMatrix,
    b: &LabeledMatrix,
    b_tilde: &LabeledMatrix,
    unfrozen: &[Label],
) -> bool {
    let bm = b.mul(m);
    let first = unfrozen.iter().all(|&i| m.labels.iter().all(|&j| b_tilde.get(i, j) == bm.get(i, j)));
    let second = unfrozen.iter().all(|&j| m.labels.iter().all(|&i| *m.get(i, j) == int(i64::from(i == j))));
    first && second
}

/// Outcome of the matrix-level checks behind the twist theorem for one type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMatrixCheck {
    /// `M = N · B^mod`.
    pub m_equals_n_b_mod: bool,
    /// Hypotheses hold for `B = −B_Σ`, `B̃ = B_Σ`.
    pub change_of_coefficients: bool,
    /// `M = [[0,0,c^{-1}],[0,Id,0],[c,0,0]]` with rows of each block the images of `ω_i`.
    pub block_form: bool,
}

impl TwistMatrixCheck {
    pub fn passed(&self) -> bool {
        self.m_equals_n_b_mod && self.change_of_coefficients && self.block_form
    }
}

pub fn check_twist_matrices(cartan: &CartanData) -> Result<TwistMatrixCheck, CartanError> {
    let word = DoubleReducedWord::coxeter(cartan);
    let seed = build_word_seed(cartan, &word)?;
    let labels = word.indices();
    let (b_mod, _) = build_b_mod(cartan, &word)?;
    let n = twist_matrix_n(cartan)?;
    let m = twist_matrix_m(cartan)?;
    let b_mod = LabeledMatrix::new(labels.clone(), b_mod);
    let b = LabeledMatrix::new(labels.clone(), seed.b().clone());
    let m_equals_n_b_mod = n.mul(&b_mod) == m;
    let change_of_coefficients = satisfies_change_of_coefficients(&m, &b.neg(), &b, &seed.unfrozen());

    let r = cartan.rank();
    let c = WeylWord::coxeter(r);
    let fwd = c.action_matrix(cartan)?.transpose();
    let back = c.inverse().action_matrix(cartan)?.transpose();
    let block = RatMatrix::from_fn(3 * r, 3 * r, |p, q| match (p / r, q / r) {
        (0, 2) => back.get(p % r, q % r).clone(),
        (1, 1) => int(i64::from(p == q)),
        (2, 0) => fwd.get(p % r, q % r).clone(),
        _ => int(0),
    });
    let block_form = m.matrix() == &block;
    Ok(TwistMatrixCheck { m_equals_n_b_mod, change_of_coefficients, block_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::cartan::catalog_str;

    #[test]
    fn sl2_matrices() {
        let a1 = catalog_str("A1").unwrap();
        let n = twist_matrix_n(&a1).unwrap();
        let h = rat(1, 2);
        let expected_n = RatMatrix::from_rows(vec![
            vec![h.clone(), h.clone(), -h.clone()],
            vec![h.clone(), h.clone(), h.clone()],
            vec![-h.clone(), h.clone(), h.clone()],
        ]);
        assert_eq!(n.matrix(), &expected_n);
        let m = twist_matrix_m(&a1).unwrap();
        assert_eq!(m.matrix(), &RatMatrix::from_i64(&[vec![0, 0, -1], vec![0, 1, 0], vec![-1, 0, 0]]));
        let seed = build_word_seed(&a1, &DoubleReducedWord::coxeter(&a1)).unwrap();
        let b = LabeledMatrix::new(seed.indices().to_vec(), seed.b().clone());
        let mp = m_prime(&m, &b.neg(), 1);
        assert_eq!(mp.matrix(), &RatMatrix::from_i64(&[vec![0, 0, -1], vec![-1, 1, -1], vec![-1, 0, 0]]));
        assert!(m.mul(&m).is_identity());
        assert!(mp.mul(&mp).is_identity());
        assert!(check_twist_matrices(&a1).unwrap().passed());
    }

    #[test]
    fn identity_block_is_delta() {
        let a3 = catalog_str("A3").unwrap();
        let m = twist_matrix_m(&a3).unwrap();
        for j in 1..=3 {
            for k in 1..=3 {
                assert_eq!(*m.get(j, k), int(i64::from(j == k)));
            }
        }
    }

    #[test]
    fn nonsimply_laced_checks() {
        for t in ["B2", "C3", "G2", "F4", "B3"] {
            let check = check_twist_matrices(&catalog_str(t).unwrap()).unwrap();
            assert!(check.passed(), "{t}: {check:?}");
        }
    }

    #[test]
    fn affine_is_rejected() {
        assert!(matches!(twist_matrix_n(&catalog_str("A1~").unwrap()), Err(CartanError::Singular)));
    }
}
