use std::collections::{BTreeMap, BTreeSet};
use std::fmt;


use super::{Flavor, Label, Seed, SeedError, SymbolicTorusPoint, TorusPoint};
use crate::algebra::{format_rational, Rational, Scalar};
use crate::matrix::RatMatrix;

/// A surjection π from source labels onto target labels, with the target's
/// frozen subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamationMap {
    pi: BTreeMap<Label, Label>,
    target_frozen: BTreeSet<Label>,
}

/// The first violated amalgamation condition, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmalgamationViolation {
    /// A source index has no image.
    NotTotal { i: Label },
    /// `π(i) = π(j)` for distinct i, j that are not both frozen with `B_ij = 0`.
    Gluing { i: Label, j: Label },
    /// The fiber sum `B̃_kl` is non-integral on a pair that is not frozen in the target.
    FiberSum { k: Label, l: Label, value: String },
    /// An unfrozen source index maps to a frozen target index.
    Unfrozen { i: Label },
    /// Glued indices carry different skew-symmetrizers.
    Symmetrizer { i: Label, j: Label },
}

impl AmalgamationViolation {
    /// Condition number in the definition (0 when π is not total).
    pub fn condition(&self) -> u8 {
        match self {
            AmalgamationViolation::NotTotal { .. } => 0,
            AmalgamationViolation::Gluing { .. } => 1,
            AmalgamationViolation::FiberSum { .. } => 2,
            AmalgamationViolation::Unfrozen { .. } => 3,
            AmalgamationViolation::Symmetrizer { .. } => 4,
        }
    }
}

impl fmt::Display for AmalgamationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmalgamationViolation::NotTotal { i } => write!(f, "index {i} has no image"),
            AmalgamationViolation::Gluing { i, j } => {
                write!(f, "condition 1: {i} and {j} are glued but not frozen with B = 0")
            }
            AmalgamationViolation::FiberSum { k, l, value } => {
                write!(f, "condition 2: glued entry B[{k}][{l}] = {value} is not integral")
            }
            AmalgamationViolation::Unfrozen { i } => {
                write!(f, "condition 3: unfrozen {i} maps to a frozen index")
            }
            AmalgamationViolation::Symmetrizer { i, j } => {
                write!(f, "condition 4: glued {i} and {j} have different symmetrizers")
            }
        }
    }
}

impl AmalgamationMap {
    pub fn new(
        pairs: impl IntoIterator<Item = (Label, Label)>,
        target_frozen: impl IntoIterator<Item = Label>,
    ) -> Self {
        AmalgamationMap { pi: pairs.into_iter().collect(), target_frozen: target_frozen.into_iter().collect() }
    }

    /// The identity on `seed`, keeping its frozen set.
    pub fn identity(seed: &Seed) -> Self {
        Self::new(seed.indices().iter().map(|&i| (i, i)), seed.frozen().iter().copied())
    }

    pub fn image(&self, i: Label) -> Option<Label> {
        self.pi.get(&i).copied()
    }

    /// Target labels in increasing order.
    pub fn targets(&self) -> Vec<Label> {
        self.pi.values().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn target_frozen(&self) -> &BTreeSet<Label> {
        &self.target_frozen
    }

    fn fiber_sum(&self, seed: &Seed) -> RatMatrix {
        let targets = self.targets();
        let pos: BTreeMap<Label, usize> = targets.iter().enumerate().map(|(p, &t)| (t, p)).collect();
        let mut b = RatMatrix::zeros(targets.len(), targets.len());
        for (p, &i) in seed.indices().iter().enumerate() {
            for (q, &j) in seed.indices().iter().enumerate() {
                let v = seed.b().get(p, q);
                if v.is_zero() {
                    continue;
                }
                let (k, l) = (pos[&self.pi[&i]], pos[&self.pi[&j]]);
                let s: Rational = b.get(k, l) + v;
                b.set(k, l, s);
            }
        }
        b
    }

    /// Checks conditions (1)–(4) against `seed`, reporting the first failure.
    pub fn validate(&self, seed: &Seed) -> Result<(), AmalgamationViolation> {
        for &i in seed.indices() {
            if !self.pi.contains_key(&i) {
                return Err(AmalgamationViolation::NotTotal { i });
            }
        }
        let idx = seed.indices();
        for (p, &i) in idx.iter().enumerate() {
            for (q, &j) in idx.iter().enumerate().skip(p + 1) {
                if self.pi[&i] != self.pi[&j] {
                    continue;
                }
                if !(seed.is_frozen(i) && seed.is_frozen(j)) || !seed.b().get(p, q).is_zero() {
                    return Err(AmalgamationViolation::Gluing { i, j });
                }
            }
        }
        let targets = self.targets();
        let b = self.fiber_sum(seed);
        for (k, &tk) in targets.iter().enumerate() {
            for (l, &tl) in targets.iter().enumerate() {
                let v = b.get(k, l);
                let both_frozen = self.target_frozen.contains(&tk) && self.target_frozen.contains(&tl);
                if !v.is_integer() && !both_frozen {
                    return Err(AmalgamationViolation::FiberSum { k: tk, l: tl, value: format_rational(v) });
                }
            }
        }
        for &i in idx {
            if !seed.is_frozen(i) && self.target_frozen.contains(&self.pi[&i]) {
                return Err(AmalgamationViolation::Unfrozen { i });
            }
        }
        for (p, &i) in idx.iter().enumerate() {
            for (q, &j) in idx.iter().enumerate().skip(p + 1) {
                if self.pi[&i] == self.pi[&j] && seed.d()[p] != seed.d()[q] {
                    return Err(AmalgamationViolation::Symmetrizer { i, j });
                }
            }
        }
        Ok(())
    }

    /// The amalgamated seed, indexed by the target labels in increasing order.
    pub fn amalgamate(&self, seed: &Seed) -> Result<Seed, SeedError> {
        self.validate(seed).map_err(SeedError::InvalidAmalgamation)?;
        let targets = self.targets();
        let d = targets
            .iter()
            .map(|&t| {
                let p = seed.indices().iter().position(|i| self.pi[i] == t).expect("surjective");
                seed.d()[p]
            })
            .collect();
        Seed::new(targets, self.target_frozen.iter().copied(), self.fiber_sum(seed), d)
    }

    /// `X̃_j = ∏_{π(i)=j} X_i`.
    pub fn pushforward<F: Scalar>(&self, point: &TorusPoint<F>) -> Result<TorusPoint<F>, SeedError> {
        if point.flavor() != Flavor::X {
            return Err(SeedError::WrongFlavor { expected: Flavor::X, found: point.flavor() });
        }
        let targets = self.targets();
        let mut values: Vec<Option<F>> = vec![None; targets.len()];
        for (&i, v) in point.labels().iter().zip(point.values()) {
            let t = self.image(i).ok_or(SeedError::UnknownIndex(i))?;
            let p = targets.binary_search(&t).expect("image is a target");
            values[p] = Some(match values[p].take() {
                None => v.clone(),
                Some(acc) => acc.mul(v),
            });
        }
        let values = values.into_iter().map(|v| v.expect("surjective")).collect();
        TorusPoint::new(Flavor::X, targets, values)
    }

    /// Assigns to each source index the target coordinate at its image.
    pub fn pullback<F: Scalar>(
        &self,
        source: &Seed,
        target_point: &TorusPoint<F>,
    ) -> Result<TorusPoint<F>, SeedError> {
        let values = source
            .indices()
            .iter()
            .map(|&i| {
                let t = self.image(i).ok_or(SeedError::UnknownIndex(i))?;
                target_point.get(t).cloned().ok_or(SeedError::UnknownIndex(t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        TorusPoint::new(target_point.flavor(), source.indices().to_vec(), values)
    }

    /// Whether mutating at `k` commutes with amalgamation, for seeds and for the
    /// X-coordinate square. Errors when π is not an amalgamation of `seed` or of
    /// `μ_k(seed)`, since the statement then has no content.
    pub fn check_commutes(&self, seed: &Seed, k: Label) -> Result<bool, SeedError> {
        self.validate(seed)
            .map_err(|violation| SeedError::AmalgamationHypothesis { which: "source", violation })?;
        let mutated = seed.mutate(k)?;
        self.validate(&mutated)
            .map_err(|violation| SeedError::AmalgamationHypothesis { which: "mutated", violation })?;
        let tk = self.pi[&k];
        let glued = self.amalgamate(seed)?;
        if glued.mutate(tk)? != self.amalgamate(&mutated)? {
            return Ok(false);
        }
        let x = SymbolicTorusPoint::initial(seed, Flavor::X);
        let down_then_mutate = self.pushforward(&x)?.mutate_x(&glued, tk)?;
        let mutate_then_down = self.pushforward(&x.mutate_x(seed, k)?)?;
        Ok(down_then_mutate == mutate_then_down)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn path_quiver() -> Seed {
        let b = RatMatrix::from_i64(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        Seed::new(vec![1, 2, 3], [1, 3], b, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn path_quiver_counterexample() {
        let s = path_quiver();
        let pi = AmalgamationMap::new([(1, 1), (2, 2), (3, 1)], [1]);
        assert!(pi.validate(&s).is_ok());
        let glued = pi.amalgamate(&s).unwrap();
        assert_eq!(glued.entry(1, 2).unwrap(), &int(0));
        let after = s.mutate(2).unwrap();
        assert_eq!(after.entry(1, 3).unwrap(), &int(1));
        assert!(matches!(pi.validate(&after), Err(AmalgamationViolation::Gluing { i: 1, j: 3 })));
        match pi.check_commutes(&s, 2) {
            Err(SeedError::AmalgamationHypothesis { which: "mutated", violation }) => {
                assert_eq!(violation.condition(), 1)
            }
            other => panic!("expected a hypothesis failure, got {other:?}"),
        }
    }

    #[test]
    fn gluing_unfrozen_is_condition_one() {
        let s = path_quiver();
        let pi = AmalgamationMap::new([(1, 1), (2, 1), (3, 3)], [1, 3]);
        assert_eq!(pi.validate(&s).unwrap_err().condition(), 1);
        let bad = AmalgamationMap::new([(1, 1), (2, 2), (3, 3)], [1, 2, 3]);
        assert_eq!(bad.validate(&s).unwrap_err().condition(), 3);
        let partial = AmalgamationMap::new([(1, 1), (2, 2)], [1]);
        assert_eq!(partial.validate(&s).unwrap_err().condition(), 0);
    }

    #[test]
    fn identity_is_trivial() {
        let s = path_quiver();
        let pi = AmalgamationMap::identity(&s);
        assert_eq!(pi.amalgamate(&s).unwrap(), s);
        assert!(pi.check_commutes(&s, 2).unwrap());
    }

    #[test]
    fn direct_sum_gluing_commutes() {
        // Two copies of 1 → 2 with frozen heads glued: a → f ← b.
        let b = RatMatrix::from_i64(&[
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, -1, 0],
        ]);
        let s = Seed::new(vec![1, 2, 3, 4], [2, 4], b, vec![1, 1, 1, 1]).unwrap();
        let pi = AmalgamationMap::new([(1, 1), (2, 2), (3, 3), (4, 2)], [2]);
        for k in [1, 3] {
            assert!(pi.check_commutes(&s, k).unwrap());
        }
        let x = TorusPoint::new(Flavor::X, vec![1, 2, 3, 4], vec![int(2), int(3), int(5), int(7)]).unwrap();
        let down = pi.pushforward(&x).unwrap();
        assert_eq!(down.values(), &[int(2), int(21), int(5)]);
        let up = pi.pullback(&s, &down).unwrap();
        assert_eq!(up.values(), &[int(2), int(21), int(5), int(21)]);
    }
}
