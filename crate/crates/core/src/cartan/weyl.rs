//! Weight-lattice arithmetic and Weyl words.
//!
//! Weights are stored in the fundamental-weight basis, so `⟨λ | α_i^∨⟩ = λ_i` and
//! `α_j = Σ_i C_ij ω_i`. Coweights are stored in the fundamental-coweight basis,
//! so `⟨α_j | v⟩ = v_j`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use super::{CartanData, CartanError};
use crate::algebra::{format_rational, int, Rational};
use crate::matrix::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Weight,
    Coweight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    kind: WeightKind,
    coords: Vec<Rational>,
}

impl WeightVector {
    pub fn new(kind: WeightKind, coords: Vec<Rational>) -> Self {
        WeightVector { kind, coords }
    }

    pub fn zero(kind: WeightKind, r: usize) -> Self {
        Self::new(kind, vec![Rational::zero(); r])
    }

    /// `ω_i` (or `ω_i^∨`), 1-based.
    pub fn fundamental(kind: WeightKind, r: usize, i: usize) -> Self {
        let mut w = Self::zero(kind, r);
        w.coords[i - 1] = int(1);
        w
    }

    /// `α_i = Σ_k C_ki ω_k`.
    pub fn simple_root(cartan: &CartanData, i: usize) -> Self {
        let r = cartan.rank();
        Self::new(WeightKind::Weight, (1..=r).map(|k| int(cartan.entry(k, i))).collect())
    }

    /// `α_i^∨ = Σ_k C_ik ω_k^∨`.
    pub fn simple_coroot(cartan: &CartanData, i: usize) -> Self {
        let r = cartan.rank();
        Self::new(WeightKind::Coweight, (1..=r).map(|k| int(cartan.entry(i, k))).collect())
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        Self::new(self.kind, self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        Self::new(self.kind, self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.kind, self.coords.iter().map(|a| a * c).collect())
    }

    /// `⟨λ | α_i^∨⟩`, 1-based.
    pub fn coroot_pairing(&self, i: usize) -> &Rational {
        debug_assert_eq!(self.kind, WeightKind::Weight);
        &self.coords[i - 1]
    }

    /// Coordinates in the simple-root basis, `a = C^{-1} λ`. Needs finite type.
    pub fn root_coords(&self, cartan: &CartanData) -> Result<Vec<Rational>, CartanError> {
        let inv = cartan.inverse()?;
        let r = self.rank();
        Ok((0..r).map(|i| (0..r).map(|j| inv.get(i, j) * &self.coords[j]).sum()).collect())
    }

    /// `⟨λ | v⟩` for a weight λ and coweight v. Needs finite type.
    pub fn pair(&self, coweight: &WeightVector, cartan: &CartanData) -> Result<Rational, CartanError> {
        debug_assert_eq!(self.kind, WeightKind::Weight);
        debug_assert_eq!(coweight.kind, WeightKind::Coweight);
        let a = self.root_coords(cartan)?;
        Ok(a.iter().zip(&coweight.coords).map(|(x, y)| x * y).sum())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if self.kind == WeightKind::Weight { "ω" } else { "ω^∨" };
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            match (first, sign) {
                (true, "-") => write!(f, "-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            if mag != int(1) {
                write!(f, "{}", format_rational(&mag))?;
            }
            write!(f, "{sym}{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `s_i(λ) = λ − ⟨λ|α_i^∨⟩ α_i` in fundamental-weight coordinates.
pub fn reflect(cartan: &CartanData, i: usize, lambda: &WeightVector) -> WeightVector {
    let li = lambda.coords[i - 1].clone();
    if li.is_zero() {
        return lambda.clone();
    }
    let mut out = lambda.clone();
    for (k, x) in out.coords.iter_mut().enumerate() {
        *x -= &li * int(cartan.entry(k + 1, i));
    }
    out
}

/// `s_l(α_j) = α_j − C_lj α_l` on simple-root coordinates.
fn reflect_root_coords(cartan: &CartanData, l: usize, a: &mut [Rational]) {
    let pairing: Rational = (1..=a.len()).map(|j| &a[j - 1] * int(cartan.entry(l, j))).sum();
    a[l - 1] -= pairing;
}

/// A word `s_{i_1} ⋯ s_{i_n}` in the simple reflections, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    word: Vec<usize>,
}

impl WeylWord {
    pub fn new(word: Vec<usize>, rank: usize) -> Result<Self, CartanError> {
        if let Some(&i) = word.iter().find(|&&i| i == 0 || i > rank) {
            return Err(CartanError::IndexOutOfRange { index: i as i64, rank });
        }
        Ok(WeylWord { word })
    }

    pub fn identity() -> Self {
        WeylWord { word: Vec::new() }
    }

    /// `c = s_1 ⋯ s_r`.
    pub fn coxeter(rank: usize) -> Self {
        WeylWord { word: (1..=rank).collect() }
    }

    pub fn letters(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WeylWord { word: self.word.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        WeylWord { word: self.word.iter().chain(&other.word).copied().collect() }
    }

    fn check_rank(&self, cartan: &CartanData) -> Result<(), CartanError> {
        let rank = cartan.rank();
        match self.word.iter().find(|&&i| i > rank) {
            Some(&i) => Err(CartanError::IndexOutOfRange { index: i as i64, rank }),
            None => Ok(()),
        }
    }

    /// Applies the reflections right to left.
    pub fn act(&self, cartan: &CartanData, lambda: &WeightVector) -> Result<WeightVector, CartanError> {
        self.check_rank(cartan)?;
        if lambda.rank() != cartan.rank() || lambda.kind != WeightKind::Weight {
            return Err(CartanError::Invalid("weight has the wrong rank or kind".into()));
        }
        Ok(self.word.iter().rev().fold(lambda.clone(), |l, &i| reflect(cartan, i, &l)))
    }

    /// Column j is `w(ω_j)`. Faithful for every symmetrizable type.
    pub fn action_matrix(&self, cartan: &CartanData) -> Result<RatMatrix, CartanError> {
        let r = cartan.rank();
        let mut m = RatMatrix::zeros(r, r);
        for j in 1..=r {
            let img = self.act(cartan, &WeightVector::fundamental(WeightKind::Weight, r, j))?;
            for (i, x) in img.coords.into_iter().enumerate() {
                m.set(i, j - 1, x);
            }
        }
        Ok(m)
    }

    /// Equality in the Weyl group.
    pub fn same_element(&self, other: &Self, cartan: &CartanData) -> Result<bool, CartanError> {
        Ok(self.action_matrix(cartan)? == other.action_matrix(cartan)?)
    }

    /// Reduced iff `s_{i_1} ⋯ s_{i_{k-1}}(α_{i_k})` is a positive root for every k.
    pub fn is_reduced(&self, cartan: &CartanData) -> Result<bool, CartanError> {
        self.check_rank(cartan)?;
        let r = cartan.rank();
        for k in 0..self.word.len() {
            let mut a = vec![Rational::zero(); r];
            a[self.word[k] - 1] = int(1);
            for &l in self.word[..k].iter().rev() {
                reflect_root_coords(cartan, l, &mut a);
            }
            if a.iter().any(|x| x.is_negative()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Breadth-first enumeration of group elements of length at most `max_len`,
/// keyed by action matrix; the recorded word is a shortest one.
pub fn enumerate_elements(cartan: &CartanData, max_len: usize) -> BTreeMap<Vec<String>, (usize, WeylWord)> {
    let key = |w: &WeylWord| -> Vec<String> {
        w.action_matrix(cartan).expect("in range").entries().iter().map(format_rational).collect()
    };
    let mut seen = BTreeMap::new();
    let e = WeylWord::identity();
    seen.insert(key(&e), (0, e.clone()));
    let mut queue = VecDeque::from([e]);
    while let Some(w) = queue.pop_front() {
        if w.len() == max_len {
            continue;
        }
        for i in 1..=cartan.rank() {
            let next = w.concat(&WeylWord { word: vec![i] });
            let k = key(&next);
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(k) {
                e.insert((next.len(), next.clone()));
                queue.push_back(next);
            }
        }
    }
    seen
}

/// `⟨(cω_i) − ω_i | ω_k^∨ + Σ_{j>k} C_kj ω_j^∨⟩ = −δ_ik` and the mirror
/// `⟨(c^{-1}ω_i) − ω_i | ω_k^∨ + Σ_{j<k} C_kj ω_j^∨⟩ = −δ_ik` for `c = s_1 ⋯ s_r`.
///
/// `cω_i − ω_i` lies in the root lattice, so the pairing is computed from its
/// simple-root coordinates and needs no inverse Cartan matrix; this covers
/// affine types.
pub fn check_coxeter_identity(cartan: &CartanData) -> bool {
    coxeter_identity_failures(cartan).is_empty()
}

/// The `(i, k, mirror)` triples at which the identity fails.
pub fn coxeter_identity_failures(cartan: &CartanData) -> Vec<(usize, usize, bool)> {
    let r = cartan.rank();
    let mut failures = Vec::new();
    for mirror in [false, true] {
        // c = s_1⋯s_r acts with s_r first; c^{-1} with s_1 first.
        let order: Vec<usize> = if mirror { (1..=r).collect() } else { (1..=r).rev().collect() };
        for i in 1..=r {
            // Track cω_i − ω_i = Σ a_j α_j, using s_l(ω_i) = ω_i − δ_il α_l.
            let mut a = vec![Rational::zero(); r];
            for &l in &order {
                reflect_root_coords(cartan, l, &mut a);
                if l == i {
                    a[l - 1] -= int(1);
                }
            }
            for k in 1..=r {
                let range: Vec<usize> = if mirror { (1..k).collect() } else { (k + 1..=r).collect() };
                let value: Rational =
                    &a[k - 1] + range.iter().map(|&j| int(cartan.entry(k, j)) * &a[j - 1]).sum::<Rational>();
                let expected = if i == k { int(-1) } else { int(0) };
                if value != expected {
                    failures.push((i, k, mirror));
                }
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::catalog_str;

    fn w(kind: WeightKind, c: &[i64]) -> WeightVector {
        WeightVector::new(kind, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn simple_reflections() {
        let a2 = catalog_str("A2").unwrap();
        let w1 = WeightVector::fundamental(WeightKind::Weight, 2, 1);
        let s1 = WeylWord::new(vec![1], 2).unwrap();
        let s2 = WeylWord::new(vec![2], 2).unwrap();
        assert_eq!(s1.act(&a2, &w1).unwrap(), w1.sub(&WeightVector::simple_root(&a2, 1)));
        assert_eq!(s2.act(&a2, &w1).unwrap(), w1);
        // c(ω1) = s1 s2 ω1 = ω2 − ω1
        let c = WeylWord::coxeter(2).act(&a2, &w1).unwrap();
        assert_eq!(c, w(WeightKind::Weight, &[-1, 1]));
        assert_eq!(c.to_string(), "-ω1 + ω2");
    }

    #[test]
    fn pairings() {
        let a1 = catalog_str("A1").unwrap();
        let w1 = WeightVector::fundamental(WeightKind::Weight, 1, 1);
        let v1 = WeightVector::fundamental(WeightKind::Coweight, 1, 1);
        assert_eq!(w1.pair(&v1, &a1).unwrap(), crate::algebra::rat(1, 2));
        let g2 = catalog_str("G2").unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                let alpha = WeightVector::simple_root(&g2, j);
                let cor = WeightVector::simple_coroot(&g2, i);
                assert_eq!(alpha.pair(&cor, &g2).unwrap(), int(g2.entry(i, j)));
            }
        }
    }

    #[test]
    fn reduced_words_match_enumeration() {
        for tag in ["A1", "A2", "A3", "B2", "C3", "B3", "G2"] {
            let c = catalog_str(tag).unwrap();
            let elems = enumerate_elements(&c, 6);
            // Every word of length ≤ 4 is reduced iff its element has that length.
            let r = c.rank();
            let mut words = vec![WeylWord::identity()];
            for _ in 0..4 {
                let mut next = Vec::new();
                for word in &words {
                    for i in 1..=r {
                        next.push(word.concat(&WeylWord { word: vec![i] }));
                    }
                }
                for word in &next {
                    let key: Vec<String> =
                        word.action_matrix(&c).unwrap().entries().iter().map(format_rational).collect();
                    let length = elems[&key].0;
                    assert_eq!(word.is_reduced(&c).unwrap(), length == word.len(), "{tag} {word}");
                }
                words = next;
            }
        }
    }

    #[test]
    fn weyl_group_orders() {
        let count = |t: &str, l| enumerate_elements(&catalog_str(t).unwrap(), l).len();
        assert_eq!(count("A2", 10), 6);
        assert_eq!(count("A3", 20), 24);
        assert_eq!(count("B2", 10), 8);
        assert_eq!(count("G2", 10), 12);
        assert_eq!(count("B3", 20), 48);
    }

    #[test]
    fn coxeter_identity_rank_one_by_hand() {
        // ⟨(cω1) − ω1 | ω1^∨⟩ = ⟨−α1 | ω1^∨⟩ = −1
        let a1 = catalog_str("A1").unwrap();
        let w1 = WeightVector::fundamental(WeightKind::Weight, 1, 1);
        let d = WeylWord::coxeter(1).act(&a1, &w1).unwrap().sub(&w1);
        let v = WeightVector::fundamental(WeightKind::Coweight, 1, 1);
        assert_eq!(d.pair(&v, &a1).unwrap(), int(-1));
        assert!(check_coxeter_identity(&a1));
    }

    #[test]
    fn coxeter_identity_g2_by_weights() {
        // Independent route through the inverse Cartan matrix.
        let g2 = catalog_str("G2").unwrap();
        let c = WeylWord::coxeter(2);
        for (word, mirror) in [(c.clone(), false), (c.inverse(), true)] {
            for i in 1..=2 {
                let wi = WeightVector::fundamental(WeightKind::Weight, 2, i);
                let diff = word.act(&g2, &wi).unwrap().sub(&wi);
                for k in 1..=2 {
                    let mut cow = WeightVector::fundamental(WeightKind::Coweight, 2, k);
                    for j in 1..=2 {
                        if (mirror && j < k) || (!mirror && j > k) {
                            let term = WeightVector::fundamental(WeightKind::Coweight, 2, j);
                            cow = cow.add(&term.scale(&int(g2.entry(k, j))));
                        }
                    }
                    let expected = if i == k { int(-1) } else { int(0) };
                    assert_eq!(diff.pair(&cow, &g2).unwrap(), expected);
                }
            }
        }
        assert!(check_coxeter_identity(&g2));
    }

    #[test]
    fn letters_out_of_range() {
        assert!(WeylWord::new(vec![3], 2).is_err());
        assert!(WeylWord::new(vec![0], 2).is_err());
        let a1 = catalog_str("A1").unwrap();
        assert!(WeylWord::coxeter(2).act(&a1, &WeightVector::fundamental(WeightKind::Weight, 1, 1)).is_err());
    }
}
