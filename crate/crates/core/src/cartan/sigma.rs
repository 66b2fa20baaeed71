//! The seed `Σ_C` and its presentation as an amalgamation of the Coxeter word seed.

use super::{build_word_seed, CartanData, CartanError, DoubleReducedWord};
use crate::algebra::int;
use crate::matrix::RatMatrix;
use crate::seeds::{check_sigma_period, AmalgamationMap, IndexPermutation, Label, MutationSequence, Seed};

/// `Σ_C` with its canonical σ-period `μ̂ = μ_1 ∘ ⋯ ∘ μ_r`, `σ = (i ↔ i+r)`.
#[derive(Clone, Debug)]
pub struct SigmaC {
    pub seed: Seed,
    pub sequence: MutationSequence,
    pub sigma: IndexPermutation,
}

impl SigmaC {
    pub fn rank(&self) -> usize {
        self.seed.len() / 2
    }

    pub fn check_period(&self) -> Result<bool, CartanError> {
        Ok(check_sigma_period(&self.seed, &self.sequence, &self.sigma)?)
    }
}

/// Indices `1..2r`, all unfrozen, `B = [[0, −C^t], [C^t, 0]]`, `d = (d′, d′)`.
///
/// This is the orientation produced by amalgamating the Coxeter word seed.
pub fn build_sigma_c(cartan: &CartanData) -> Result<SigmaC, CartanError> {
    let r = cartan.rank();
    let b = RatMatrix::from_fn(2 * r, 2 * r, |p, q| match (p < r, q < r) {
        (true, false) => int(-cartan.entry(q - r + 1, p + 1)),
        (false, true) => int(cartan.entry(q + 1, p - r + 1)),
        _ => int(0),
    });
    let d: Vec<i64> = cartan.symmetrizers().iter().chain(cartan.symmetrizers()).copied().collect();
    let n = r as Label;
    let seed = Seed::new((1..=2 * n).collect(), [], b, d)?;
    let sequence = MutationSequence::new((1..=n).collect());
    let sigma = IndexPermutation::new((1..=n).flat_map(|i| [(i, i + n), (i + n, i)]))?;
    Ok(SigmaC { seed, sequence, sigma })
}

/// The word seed of `(-1, …, -r, 1, …, r)` and `π(k) = k` for `k > 0`,
/// `π(k) = |k| + r` for `k < 0`, with no frozen targets.
pub fn coxeter_amalgamation(cartan: &CartanData) -> Result<(Seed, AmalgamationMap), CartanError> {
    let word = DoubleReducedWord::coxeter(cartan);
    let seed = build_word_seed(cartan, &word)?;
    let r = cartan.rank() as Label;
    let pi = AmalgamationMap::new(seed.indices().iter().map(|&k| (k, if k > 0 { k } else { -k + r })), []);
    Ok((seed, pi))
}

/// Outcome of the amalgamation theorem checks for one Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamationCheck {
    pub valid: bool,
    pub equals_sigma_c: bool,
    /// One entry per prefix `μ_1 … μ_k`: whether mutation at k commutes.
    pub commutes: Vec<bool>,
}

impl AmalgamationCheck {
    pub fn passed(&self) -> bool {
        self.valid && self.equals_sigma_c && self.commutes.iter().all(|&b| b)
    }
}

/// Validates π, compares the amalgamated seed with `Σ_C`, and checks that
/// amalgamation commutes with each mutation along `μ_1, …, μ_r`.
pub fn check_coxeter_amalgamation(cartan: &CartanData) -> Result<AmalgamationCheck, CartanError> {
    let (mut seed, pi) = coxeter_amalgamation(cartan)?;
    let valid = pi.validate(&seed).is_ok();
    if !valid {
        return Ok(AmalgamationCheck { valid, equals_sigma_c: false, commutes: Vec::new() });
    }
    let equals_sigma_c = pi.amalgamate(&seed)? == build_sigma_c(cartan)?.seed;
    let mut commutes = Vec::new();
    for k in 1..=cartan.rank() as Label {
        commutes.push(pi.check_commutes(&seed, k)?);
        seed = seed.mutate(k)?;
    }
    Ok(AmalgamationCheck { valid, equals_sigma_c, commutes })
}
