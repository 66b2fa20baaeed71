//! Double reduced words and the seeds attached to them.

use std::fmt;

use super::{CartanData, CartanError, WeylWord};
use crate::algebra::{int, rat, Rational};
use crate::matrix::RatMatrix;
use crate::seeds::{Label, Seed};

/// A shuffle of a reduced word for `u` in the letters `-1..-r` and a reduced
/// word for `v` in the letters `1..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleReducedWord {
    rank: usize,
    entries: Vec<i64>,
}

impl DoubleReducedWord {
    /// Checks the letters and that both subwords are reduced.
    pub fn new(cartan: &CartanData, entries: Vec<i64>) -> Result<Self, CartanError> {
        let rank = cartan.rank();
        if let Some(&x) = entries.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > rank) {
            return Err(CartanError::IndexOutOfRange { index: x, rank });
        }
        let word = DoubleReducedWord { rank, entries };
        if !word.u().is_reduced(cartan)? {
            return Err(CartanError::InvalidWord(format!("negative subword of {word} is not reduced")));
        }
        if !word.v().is_reduced(cartan)? {
            return Err(CartanError::InvalidWord(format!("positive subword of {word} is not reduced")));
        }
        Ok(word)
    }

    /// Parses a comma-separated list such as `-1,-2,1,2`.
    pub fn parse(cartan: &CartanData, s: &str) -> Result<Self, CartanError> {
        let entries = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| CartanError::InvalidWord(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(cartan, entries)
    }

    /// `(-1, …, -r, 1, …, r)`, a word for `(c, c)`.
    pub fn coxeter(cartan: &CartanData) -> Self {
        let r = cartan.rank() as i64;
        let entries = (1..=r).map(|i| -i).chain(1..=r).collect();
        Self::new(cartan, entries).expect("the Coxeter word is reduced")
    }

    /// `(1, …, r, -1, …, -r)`.
    pub fn coxeter_reversed(cartan: &CartanData) -> Self {
        let r = cartan.rank() as i64;
        let entries = (1..=r).chain((1..=r).map(|i| -i)).collect();
        Self::new(cartan, entries).expect("the Coxeter word is reduced")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn m(&self) -> i64 {
        self.entries.len() as i64
    }

    /// `i_k`, with `i_k = k` when `k < 1` or `k > m`.
    pub fn letter(&self, k: Label) -> i64 {
        if k < 1 || k > self.m() {
            k
        } else {
            self.entries[k as usize - 1]
        }
    }

    /// `|i_k|`.
    pub fn node(&self, k: Label) -> usize {
        self.letter(k).unsigned_abs() as usize
    }

    /// `ε_k = sign(i_k)`.
    pub fn epsilon(&self, k: Label) -> i64 {
        self.letter(k).signum()
    }

    /// `k^+ = min{1 ≤ ℓ ≤ m : ℓ > k, |i_ℓ| = |i_k|}`, or `m + 1`.
    pub fn plus(&self, k: Label) -> Label {
        let a = self.node(k);
        (k.max(0) + 1..=self.m()).find(|&l| self.node(l) == a).unwrap_or(self.m() + 1)
    }

    /// The index set `{-1, …, -r} ∪ {1, …, m}` in this order.
    pub fn indices(&self) -> Vec<Label> {
        let r = self.rank as i64;
        (1..=r).map(|i| -i).chain(1..=self.m()).collect()
    }

    /// Frozen iff `k < 0` or `k^+ > m`.
    pub fn is_frozen(&self, k: Label) -> bool {
        k < 0 || self.plus(k) > self.m()
    }

    /// The word for `u` read off from the negative letters.
    pub fn u(&self) -> WeylWord {
        let letters = self.entries.iter().filter(|&&x| x < 0).map(|x| x.unsigned_abs() as usize).collect();
        WeylWord::new(letters, self.rank).expect("letters in range")
    }

    /// The word for `v` read off from the positive letters.
    pub fn v(&self) -> WeylWord {
        let letters = self.entries.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
        WeylWord::new(letters, self.rank).expect("letters in range")
    }

    /// `u_{≤k}`: the negative letters among `i_1..i_k`, in order; `e` for `k < 0`.
    pub fn u_le(&self, k: Label) -> WeylWord {
        let upto = k.clamp(0, self.m()) as usize;
        let letters =
            self.entries[..upto].iter().filter(|&&x| x < 0).map(|x| x.unsigned_abs() as usize).collect();
        WeylWord::new(letters, self.rank).expect("letters in range")
    }

    /// `v_{>k}`: the positive letters among `i_m, …, i_{k+1}`, in that order;
    /// `v^{-1}` for `k < 0`.
    pub fn v_gt(&self, k: Label) -> WeylWord {
        let from = k.clamp(0, self.m()) as usize;
        let letters = self.entries[from..].iter().rev().filter(|&&x| x > 0).map(|&x| x as usize).collect();
        WeylWord::new(letters, self.rank).expect("letters in range")
    }

    /// The six-bracket exchange-matrix entry `B_jk`.
    pub fn exchange_entry(&self, cartan: &CartanData, j: Label, k: Label) -> Rational {
        let m = self.m();
        let (jp, kp) = (self.plus(j), self.plus(k));
        let e = |x: Label| self.epsilon(x);
        let b = |cond: bool| i64::from(cond);
        let s = e(j) * b(j == kp) - e(k) * b(jp == k) + e(j) * b(k < j && j < kp && j > 0)
            - e(jp) * b(k < jp && jp < kp && jp <= m)
            - e(k) * b(j < k && k < jp && k > 0)
            + e(kp) * b(j < kp && kp < jp && kp <= m);
        if s == 0 {
            return int(0);
        }
        rat(cartan.entry(self.node(k), self.node(j)) * s, 2)
    }

    /// `M_jk = ½ C_{|i_k|,|i_j|} ([j^+, k^+ > m] + [j, k < 0])`.
    pub fn modification_entry(&self, cartan: &CartanData, j: Label, k: Label) -> Rational {
        let m = self.m();
        let n = i64::from(self.plus(j) > m && self.plus(k) > m) + i64::from(j < 0 && k < 0);
        if n == 0 {
            return int(0);
        }
        rat(cartan.entry(self.node(k), self.node(j)) * n, 2)
    }
}

impl fmt::Display for DoubleReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn labeled(word: &DoubleReducedWord, f: impl Fn(Label, Label) -> Rational) -> RatMatrix {
    let idx = word.indices();
    RatMatrix::from_fn(idx.len(), idx.len(), |p, q| f(idx[p], idx[q]))
}

/// The seed `Σ_𝐢`, indexed `-1, …, -r, 1, …, m`, with `d_k = d'_{|i_k|}`.
pub fn build_word_seed(cartan: &CartanData, word: &DoubleReducedWord) -> Result<Seed, CartanError> {
    check_rank(cartan, word)?;
    let idx = word.indices();
    let frozen: Vec<Label> = idx.iter().copied().filter(|&k| word.is_frozen(k)).collect();
    let b = labeled(word, |j, k| word.exchange_entry(cartan, j, k));
    let d = idx.iter().map(|&k| cartan.symmetrizers()[word.node(k) - 1]).collect();
    Ok(Seed::new(idx, frozen, b, d)?)
}

/// Returns `(B^mod, M)` with `B^mod = B + M`, in the seed's index order.
/// Errors if `B^mod` is not integral.
pub fn build_b_mod(cartan: &CartanData, word: &DoubleReducedWord) -> Result<(RatMatrix, RatMatrix), CartanError> {
    let seed = build_word_seed(cartan, word)?;
    let m = labeled(word, |j, k| word.modification_entry(cartan, j, k));
    let b_mod = seed.b().add(&m);
    if !b_mod.is_integral() {
        return Err(CartanError::NonIntegral(format!("B^mod for {word}")));
    }
    Ok((b_mod, m))
}

fn check_rank(cartan: &CartanData, word: &DoubleReducedWord) -> Result<(), CartanError> {
    if word.rank != cartan.rank() {
        return Err(CartanError::Invalid(format!("word of rank {} for a rank {} matrix", word.rank, cartan.rank())));
    }
    Ok(())
}

/// `[[C_U^t − ½C^t, C_L^t, 0], [−C_U^t, 0, −C_L^t], [0, C_U^t, C_L^t − ½C^t]]`
/// with `(C_U^t)_ij = δ_ij + [i<j] C_ji`, `(C_L^t)_ij = δ_ij + [i>j] C_ji`,
/// indices ordered `-1, …, -r, 1, …, 2r`.
pub fn block_form(cartan: &CartanData) -> RatMatrix {
    let r = cartan.rank();
    let ct = |i: usize, j: usize| int(cartan.entry(j + 1, i + 1));
    let delta = |i: usize, j: usize| int(i64::from(i == j));
    let cu = |i: usize, j: usize| if i < j { delta(i, j) + ct(i, j) } else { delta(i, j) };
    let cl = |i: usize, j: usize| if i > j { delta(i, j) + ct(i, j) } else { delta(i, j) };
    let half = rat(1, 2);
    RatMatrix::from_fn(3 * r, 3 * r, |p, q| {
        let (bp, i) = (p / r, p % r);
        let (bq, j) = (q / r, q % r);
        match (bp, bq) {
            (0, 0) => cu(i, j) - &half * ct(i, j),
            (0, 1) => cl(i, j),
            (1, 0) => -cu(i, j),
            (1, 2) => -cl(i, j),
            (2, 1) => cu(i, j),
            (2, 2) => cl(i, j) - &half * ct(i, j),
            _ => int(0),
        }
    })
}

/// Whether the word seed of `(-1..-r, 1..r)` equals [`block_form`] exactly.
pub fn check_block_form(cartan: &CartanData) -> Result<bool, CartanError> {
    let seed = build_word_seed(cartan, &DoubleReducedWord::coxeter(cartan))?;
    Ok(seed.b() == &block_form(cartan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::catalog_str;

    #[test]
    fn sl2_word_data() {
        let a1 = catalog_str("A1").unwrap();
        let w = DoubleReducedWord::coxeter(&a1);
        assert_eq!(w.entries(), &[-1, 1]);
        assert_eq!(w.indices(), vec![-1, 1, 2]);
        assert_eq!((w.plus(-1), w.plus(1), w.plus(2)), (1, 2, 3));
        let s = build_word_seed(&a1, &w).unwrap();
        assert_eq!(s.unfrozen(), vec![1]);
        assert_eq!(s.b(), &RatMatrix::from_i64(&[vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]));
        let (b_mod, m) = build_b_mod(&a1, &w).unwrap();
        assert_eq!(b_mod, RatMatrix::from_i64(&[vec![1, 1, 0], vec![-1, 0, -1], vec![0, 1, 1]]));
        assert_eq!(m.get(1, 0), &int(0));
        assert_eq!(m.get(0, 2), &int(0));
    }

    #[test]
    fn a2_word_seed_matches_the_quiver() {
        let a2 = catalog_str("A2").unwrap();
        let w = DoubleReducedWord::parse(&a2, "-1,-2,1,2").unwrap();
        let s = build_word_seed(&a2, &w).unwrap();
        assert_eq!(s.indices(), &[-1, -2, 1, 2, 3, 4]);
        assert_eq!(s.unfrozen(), vec![1, 2]);
        let h = rat(1, 2);
        let z = int(0);
        let o = int(1);
        let expected = RatMatrix::from_rows(vec![
            vec![z.clone(), -h.clone(), o.clone(), z.clone(), z.clone(), z.clone()],
            vec![h.clone(), z.clone(), -o.clone(), o.clone(), z.clone(), z.clone()],
            vec![-o.clone(), o.clone(), z.clone(), z.clone(), -o.clone(), z.clone()],
            vec![z.clone(), -o.clone(), z.clone(), z.clone(), o.clone(), -o.clone()],
            vec![z.clone(), z.clone(), o.clone(), -o.clone(), z.clone(), h.clone()],
            vec![z.clone(), z.clone(), z.clone(), o.clone(), -h.clone(), z.clone()],
        ]);
        assert_eq!(s.b(), &expected);
        assert!(check_block_form(&a2).unwrap());
    }

    #[test]
    fn invalid_words() {
        let a2 = catalog_str("A2").unwrap();
        assert!(DoubleReducedWord::parse(&a2, "1,1").is_err());
        assert!(DoubleReducedWord::parse(&a2, "-2,-2,1").is_err());
        assert!(DoubleReducedWord::parse(&a2, "3").is_err());
        assert!(DoubleReducedWord::parse(&a2, "0").is_err());
        assert!(DoubleReducedWord::parse(&a2, "x").is_err());
        assert!(DoubleReducedWord::parse(&a2, "1,2,1,-1,-2,-1").is_ok());
    }

    #[test]
    fn weyl_prefixes() {
        let a2 = catalog_str("A2").unwrap();
        let w = DoubleReducedWord::parse(&a2, "-1,2,-2,1").unwrap();
        assert_eq!(w.u_le(3).letters(), &[1, 2]);
        assert_eq!(w.u_le(-1).letters(), &[] as &[usize]);
        assert_eq!(w.v_gt(1).letters(), &[1, 2]);
        assert_eq!(w.v_gt(-2), w.v().inverse());
    }
}
