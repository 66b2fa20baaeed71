//! Randomized exact checks of the twist theorem, the ensemble map and
//! conservation under the factorization mapping.

use serde::Serialize;

use super::{
    cluster_step, factorization_element, factorization_step, invariant_ratios, special_x_chart, twist, type_a,
    word_cluster_variables, GroupError,
};
use crate::algebra::{as_i64, FastRational, Rational, Scalar};
use crate::cartan::{build_b_mod, build_sigma_c, build_word_seed, m_prime, twist_matrix_m, twist_matrix_n, DoubleReducedWord, LabeledMatrix};
use crate::matrix::RatMatrix;
use crate::sampling::{self, SampleRng};
use crate::seeds::{Flavor, Label, MutationSequence, Seed, TorusPoint};

/// Give up on a trial after this many non-generic samples in a row.
const MAX_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub genericity_retries: usize,
    pub first_failure: Option<String>,
}

impl Report {
    fn new(check: &str, n: usize, seed: u64) -> Self {
        Report { check: check.into(), n, seed, trials: 0, passes: 0, genericity_retries: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passes += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.trials > 0 && self.passes == self.trials
    }
}

/// `∏_j v_j^{e_j}` over a row of integer exponents.
fn monomial(values: &[Rational], exponents: &[Rational]) -> Result<Rational, GroupError> {
    let mut out = Rational::from_integer(1.into());
    for (v, e) in values.iter().zip(exponents) {
        let k = as_i64(e).ok_or_else(|| GroupError::NonIntegralExponent(e.to_string()))?;
        if k != 0 {
            out = out.mul(&v.powi(k)?);
        }
    }
    Ok(out)
}

/// A-mutation along `seq`, returning the final point.
fn mutate_along(seed: &Seed, point: TorusPoint<Rational>, seq: &[Label]) -> Result<TorusPoint<Rational>, GroupError> {
    let mut s = seed.clone();
    let mut p = point;
    for &k in seq {
        p = p.mutate_a(&s, k)?;
        s = s.mutate(k)?;
    }
    Ok(p)
}

/// Samples `y` until `τ(x_𝐢(y^n))` is defined; returns `(y, g, τ(g))`.
fn generic_sample(
    word: &DoubleReducedWord,
    n: usize,
    rng: &mut SampleRng,
    retries: &mut usize,
) -> Result<(Vec<Rational>, RatMatrix, RatMatrix), GroupError> {
    let dim = word.rank() + word.len();
    let mut last = GroupError::Genericity { minor: 0 };
    for _ in 0..MAX_RETRIES {
        let y = sampling::positive_rationals(rng, dim);
        let g = special_x_chart(word, n, &y)?.into_matrix();
        match twist(&g) {
            Ok(t) => return Ok((y, g, t)),
            Err(e @ GroupError::Genericity { .. }) => {
                *retries += 1;
                last = e;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// `A′ = μ̂^*A` at g against `∏_j A_j(τ(g))^{M_ij}`, and the reverse relation
/// `A_i = ∏_j A′_j(τ(g))^{M′_ij}` with `M′` from the change-of-coefficients lemma.
pub fn verify_twist_theorem(n: usize, trials: usize, seed: u64) -> Result<Report, GroupError> {
    let cartan = type_a(n)?;
    let r = cartan.rank() as Label;
    let word = DoubleReducedWord::coxeter(&cartan);
    let sigma = build_word_seed(&cartan, &word)?;
    let labels = word.indices();
    let seq: Vec<Label> = (1..=r).collect();
    let m = twist_matrix_m(&cartan)?;
    let mutated = sigma.mutate_sequence(&MutationSequence::new(seq.clone()))?;
    let b = LabeledMatrix::new(labels.clone(), mutated.b().clone());
    let m_rev = seq.iter().fold(m.clone(), |acc, &k| m_prime(&acc, &b, k));

    let mut rng = sampling::rng(seed);
    let mut report = Report::new("twist", n, seed);
    for trial in 0..trials {
        let (_, g, tg) = generic_sample(&word, n, &mut rng, &mut report.genericity_retries)?;
        let a = TorusPoint::new(Flavor::A, labels.clone(), word_cluster_variables(&g, &word)?)?;
        let ta = TorusPoint::new(Flavor::A, labels.clone(), word_cluster_variables(&tg, &word)?)?;
        let a_mut = mutate_along(&sigma, a.clone(), &seq)?;
        let ta_mut = mutate_along(&sigma, ta.clone(), &seq)?;
        let mut bad = None;
        for (p, &i) in labels.iter().enumerate() {
            if a_mut.values()[p] != monomial(ta.values(), m.matrix().row(p))? {
                bad.get_or_insert(format!("trial {trial}: M relation at index {i}"));
            }
            if a.values()[p] != monomial(ta_mut.values(), m_rev.matrix().row(p))? {
                bad.get_or_insert(format!("trial {trial}: M' relation at index {i}"));
            }
        }
        report.record(bad.is_none(), || bad.unwrap_or_default());
    }
    Ok(report)
}

/// `X_i = ∏_j A_j(τ(g))^{B^mod_ij}` for `g = x_𝐢(X)`, and the cluster variables of
/// the reversed word at g against `∏_j X_j^{N_ij}`.
pub fn verify_ensemble(n: usize, trials: usize, seed: u64) -> Result<Report, GroupError> {
    let cartan = type_a(n)?;
    let word = DoubleReducedWord::coxeter(&cartan);
    let reversed = DoubleReducedWord::coxeter_reversed(&cartan);
    let labels = word.indices();
    let (b_mod, _) = build_b_mod(&cartan, &word)?;
    // X = y^n, so exponents of N are applied to y after scaling by n.
    let n_scaled = twist_matrix_n(&cartan)?.matrix().scale(&Rational::from_integer((n as i64).into()));

    let mut rng = sampling::rng(seed);
    let mut report = Report::new("ensemble", n, seed);
    for trial in 0..trials {
        let (y, g, tg) = generic_sample(&word, n, &mut rng, &mut report.genericity_retries)?;
        let x: Vec<Rational> = y.iter().map(|v| v.powi(n as i64)).collect::<Result<_, _>>()?;
        let ta = word_cluster_variables(&tg, &word)?;
        let a_rev = word_cluster_variables(&g, &reversed)?;
        let mut bad = None;
        for (p, &i) in labels.iter().enumerate() {
            if x[p] != monomial(&ta, b_mod.row(p))? {
                bad.get_or_insert(format!("trial {trial}: p-map at index {i}"));
            }
            if a_rev[p] != monomial(&y, n_scaled.row(p))? {
                bad.get_or_insert(format!("trial {trial}: N relation at index {i}"));
            }
        }
        report.record(bad.is_none(), || bad.unwrap_or_default());
    }
    Ok(report)
}

/// Iterates the factorization mapping from `points` random starts for `steps`
/// steps each; one trial per step. The first step of every orbit also checks
/// the regrouping against the matrix route; later steps compare the
/// invariants of each iterate with those of the start. Runs over
/// [`FastRational`]; the numerators grow linearly in length along an orbit.
pub fn verify_conservation(n: usize, points: usize, steps: usize, seed: u64) -> Result<Report, GroupError> {
    let cartan = type_a(n)?;
    let sigma = build_sigma_c(&cartan)?;
    let mut rng = sampling::rng(seed);
    let mut report = Report::new("factorization-conservation", n, seed);
    for point in 0..points {
        let x0: Vec<FastRational> =
            sampling::positive_rationals(&mut rng, 2 * cartan.rank()).iter().map(FastRational::from).collect();
        let first = factorization_step(n, &x0)?;
        report.record(first.consistent()?, || format!("point {point}, step 0"));
        let initial = first.invariants_before;
        let mut x = first.cluster;
        for step in 1..steps {
            let next = cluster_step(&sigma, &x)?;
            let ok = invariant_ratios(&factorization_element(n, &next)?)? == initial;
            report.record(ok, || format!("point {point}, step {step}"));
            x = next;
        }
    }
    Ok(report)
}
