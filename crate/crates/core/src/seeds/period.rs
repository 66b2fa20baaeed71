use std::collections::BTreeMap;

use super::{Label, Seed, SeedError, TorusPoint};
use crate::algebra::Scalar;

/// Unfrozen labels, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MutationSequence {
    steps: Vec<Label>,
}

impl MutationSequence {
    pub fn new(steps: Vec<Label>) -> Self {
        MutationSequence { steps }
    }

    pub fn steps(&self) -> &[Label] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A bijection on an index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPermutation {
    forward: BTreeMap<Label, Label>,
    inverse: BTreeMap<Label, Label>,
}

impl IndexPermutation {
    pub fn new(pairs: impl IntoIterator<Item = (Label, Label)>) -> Result<Self, SeedError> {
        let forward: BTreeMap<Label, Label> = pairs.into_iter().collect();
        let mut inverse = BTreeMap::new();
        for (&a, &b) in &forward {
            if inverse.insert(b, a).is_some() {
                return Err(SeedError::InvalidPermutation(format!("{b} has two preimages")));
            }
        }
        if inverse.keys().ne(forward.keys()) {
            return Err(SeedError::InvalidPermutation("image differs from domain".into()));
        }
        Ok(IndexPermutation { forward, inverse })
    }

    pub fn identity(labels: &[Label]) -> Self {
        Self::new(labels.iter().map(|&i| (i, i))).expect("identity is a bijection")
    }

    /// Labels absent from the domain are fixed.
    pub fn apply(&self, i: Label) -> Label {
        *self.forward.get(&i).unwrap_or(&i)
    }

    pub fn apply_inverse(&self, i: Label) -> Label {
        *self.inverse.get(&i).unwrap_or(&i)
    }

    fn check_domain(&self, seed: &Seed) -> Result<(), SeedError> {
        if let Some(&i) = self.forward.keys().find(|i| seed.position(**i).is_err()) {
            return Err(SeedError::InvalidPermutation(format!("{i} is not an index of the seed")));
        }
        Ok(())
    }
}

/// True iff `μ̂(B)_ij = B_{σ(i)σ(j)}` for all i, j, with σ preserving the frozen
/// set and the skew-symmetrizers.
pub fn check_sigma_period(
    seed: &Seed,
    seq: &MutationSequence,
    sigma: &IndexPermutation,
) -> Result<bool, SeedError> {
    sigma.check_domain(seed)?;
    let mutated = seed.mutate_sequence(seq)?;
    for &i in seed.indices() {
        let si = sigma.apply(i);
        if seed.is_frozen(i) != seed.is_frozen(si) || seed.symmetrizer(i)? != seed.symmetrizer(si)? {
            return Ok(false);
        }
        for &j in seed.indices() {
            if mutated.entry(i, j)? != seed.entry(si, sigma.apply(j))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `μ̂_σ^*(Z_i) = (μ_{i_1} ∘ ⋯ ∘ μ_{i_k})^*(Z_{σ^{-1}(i)})` for either flavor.
///
/// With `checked`, the σ-period condition is verified first.
pub fn cluster_automorphism<F: Scalar>(
    seed: &Seed,
    seq: &MutationSequence,
    sigma: &IndexPermutation,
    point: &TorusPoint<F>,
    checked: bool,
) -> Result<TorusPoint<F>, SeedError> {
    if checked && !check_sigma_period(seed, seq, sigma)? {
        return Err(SeedError::NotAPeriod(format!("{:?}", seq.steps())));
    }
    let mut s = seed.clone();
    let mut p = point.clone();
    for &k in seq.steps() {
        p = match p.flavor() {
            super::Flavor::A => p.mutate_a(&s, k)?,
            super::Flavor::X => p.mutate_x(&s, k)?,
        };
        s = s.mutate(k)?;
    }
    p.pull_by(|i| sigma.apply_inverse(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalFunction;
    use crate::seeds::tests::rank_one_sigma_c;
    use crate::seeds::{Flavor, SymbolicTorusPoint};

    fn swap() -> IndexPermutation {
        IndexPermutation::new([(1, 2), (2, 1)]).unwrap()
    }

    #[test]
    fn periods() {
        let s = rank_one_sigma_c();
        let seq = MutationSequence::new(vec![1]);
        assert!(check_sigma_period(&s, &seq, &swap()).unwrap());
        assert!(check_sigma_period(&s, &MutationSequence::default(), &IndexPermutation::identity(&[1, 2])).unwrap());
        assert!(!check_sigma_period(&s, &seq, &IndexPermutation::identity(&[1, 2])).unwrap());
        assert!(IndexPermutation::new([(1, 2), (2, 2)]).is_err());
    }

    #[test]
    fn rank_one_automorphisms() {
        let s = rank_one_sigma_c();
        let seq = MutationSequence::new(vec![1]);
        let a = SymbolicTorusPoint::initial(&s, Flavor::A);
        let out = cluster_automorphism(&s, &seq, &swap(), &a, true).unwrap();
        let vars = a.values()[0].variables();
        assert_eq!(out.values()[0], RationalFunction::parse("A2", vars).unwrap());
        assert_eq!(out.values()[1], RationalFunction::parse("(A2^2 + 1)/(A1)", vars).unwrap());

        let x = SymbolicTorusPoint::initial(&s, Flavor::X);
        let out = cluster_automorphism(&s, &seq, &swap(), &x, true).unwrap();
        let vars = x.values()[0].variables();
        assert_eq!(out.values()[0], RationalFunction::parse("(X1^2*X2)/(X1^2 + 2*X1 + 1)", vars).unwrap());
        assert_eq!(out.values()[1], RationalFunction::parse("X1^-1", vars).unwrap());

        let bad = IndexPermutation::identity(&[1, 2]);
        assert!(matches!(cluster_automorphism(&s, &seq, &bad, &x, true), Err(SeedError::NotAPeriod(_))));
        assert!(cluster_automorphism(&s, &seq, &bad, &x, false).is_ok());
    }
}
