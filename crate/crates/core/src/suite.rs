//! Batch verification runs shared by the command line and the acceptance target.
//!
//! Every suite is deterministic in its arguments: cases appear in input order
//! and reports carry no timings, so equal arguments serialize to equal bytes.

use std::fmt::Display;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{format_rational, FastRational, RationalFunction, Scalar, Variables};
use crate::cartan::{
    build_b_mod, build_sigma_c, build_word_seed, catalog, check_block_form, check_coxeter_amalgamation,
    check_coxeter_identity, m_prime, twist_matrix_m, twist_matrix_n, CartanData, DoubleReducedWord, FiniteType,
    LabeledMatrix, TypeTag,
};
use crate::groups::{self, check_involution_axioms, twist, word_cluster_variables, Report};
use crate::matrix::{Matrix, RatMatrix};
use crate::qsystem::{self, q_conserved, Direction, QState, QSystemSpec};
use crate::sampling;
use crate::seeds::{Flavor, Label, Seed, SymbolicTorusPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn new(check: &str, seed: Option<u64>) -> Self {
        SuiteReport { check: check.into(), seed, cases: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.cases.push(Case { name: name.into(), passed, detail });
    }

    /// An error counts as a failed case carrying the message.
    pub fn push_result<E: Display>(&mut self, name: impl Into<String>, r: Result<bool, E>) {
        match r {
            Ok(ok) => self.push(name, ok, None),
            Err(e) => self.push(name, false, Some(e.to_string())),
        }
    }

    fn push_report<E: Display>(&mut self, r: Result<Report, E>, name: String) {
        match r {
            Ok(rep) => {
                let detail = rep.first_failure.clone().or_else(|| {
                    Some(format!("{}/{} trials, {} genericity retries", rep.passes, rep.trials, rep.genericity_retries))
                });
                self.push(name, rep.passed(), detail);
            }
            Err(e) => self.push(name, false, Some(e.to_string())),
        }
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.cases.extend(other.cases);
    }

    /// True iff there is at least one case and none failed.
    pub fn passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Every finite type of rank at most `max_rank`.
pub fn finite_tags(max_rank: usize) -> Vec<TypeTag> {
    FiniteType::all_up_to(max_rank).into_iter().map(TypeTag::Finite).collect()
}

fn per_type<E: Display>(
    check: &str,
    tags: &[TypeTag],
    f: impl Fn(&CartanData) -> Result<bool, E>,
) -> SuiteReport {
    let mut report = SuiteReport::new(check, None);
    for &tag in tags {
        let r = catalog(tag).map_err(|e| e.to_string()).and_then(|c| f(&c).map_err(|e| e.to_string()));
        report.push_result(tag.to_string(), r);
    }
    report
}

/// `μ_1 ⋯ μ_r` is a σ-period of `Σ_C`; affine tags use the affine Cartan matrix.
pub fn sigma_period(tags: &[TypeTag]) -> SuiteReport {
    per_type("sigma-period", tags, |c| build_sigma_c(c)?.check_period())
}

/// The Coxeter word seed amalgamates to `Σ_C`, compatibly with each `μ_k`.
pub fn amalgamation(tags: &[TypeTag]) -> SuiteReport {
    per_type("amalgamation", tags, |c| check_coxeter_amalgamation(c).map(|a| a.passed()))
}

/// The exchange matrix of the Coxeter word seed has the `C_U^t`/`C_L^t` block form.
pub fn bmatrix_blocks(tags: &[TypeTag]) -> SuiteReport {
    per_type("bmatrix-blocks", tags, check_block_form)
}

pub fn coxeter_identity(tags: &[TypeTag]) -> SuiteReport {
    per_type("coxeter-identity", tags, |c| Ok::<_, String>(check_coxeter_identity(c)))
}

fn q_case(rep: Result<qsystem::QvsClusterReport, qsystem::QSystemError>, name: String, out: &mut SuiteReport) {
    match rep {
        Ok(r) => {
            let detail = r.first_mismatch.as_ref().map(|m| format!("trial {} node {} level {}", m.trial, m.node, m.level));
            let detail = detail.or_else(|| (!r.shift_consistent).then(|| "shifted layers disagree".into()));
            out.push(name, r.passed, detail);
        }
        Err(e) => out.push(name, false, Some(e.to_string())),
    }
}

/// Cluster variables of `μ̂_σ^k(Σ_C)` against the normalized Q-system,
/// symbolically up to `depth`.
pub fn q_vs_cluster_symbolic(tags: &[TypeTag], depth: usize) -> SuiteReport {
    let mut out = SuiteReport::new("q-vs-cluster", None);
    for &tag in tags {
        let rep = QSystemSpec::new(tag).and_then(|s| qsystem::q_vs_cluster(&s, depth));
        q_case(rep, format!("{tag} symbolic depth {depth}"), &mut out);
    }
    out
}

/// As [`q_vs_cluster_symbolic`] at `trials` random positive rational clusters.
pub fn q_vs_cluster_numeric(tags: &[TypeTag], depth: usize, trials: usize, seed: u64) -> SuiteReport {
    let mut out = SuiteReport::new("q-vs-cluster", Some(seed));
    for &tag in tags {
        let rep = QSystemSpec::new(tag).and_then(|s| qsystem::q_vs_cluster_numeric(&s, depth, trials, seed));
        q_case(rep, format!("{tag} numeric depth {depth} x{trials}"), &mut out);
    }
    out
}

pub fn twist_theorem(ns: &[usize], trials: usize, seed: u64) -> SuiteReport {
    let mut out = SuiteReport::new("twist", Some(seed));
    for &n in ns {
        out.push_report(groups::verify_twist_theorem(n, trials, seed), format!("SL{n}"));
    }
    out
}

pub fn ensemble(ns: &[usize], trials: usize, seed: u64) -> SuiteReport {
    let mut out = SuiteReport::new("ensemble", Some(seed));
    for &n in ns {
        out.push_report(groups::verify_ensemble(n, trials, seed), format!("SL{n}"));
    }
    out
}

pub fn factorization_conservation(ns: &[usize], points: usize, steps: usize, seed: u64) -> SuiteReport {
    let mut out = SuiteReport::new("factorization-conservation", Some(seed));
    for &n in ns {
        out.push_report(groups::verify_conservation(n, points, steps, seed), format!("SL{n}"));
    }
    out
}

/// `q_conserved` is constant along normalized Q-system orbits of type `A_r`.
pub fn q_orbit_conservation(ranks: &[usize], points: usize, steps: usize, seed: u64) -> SuiteReport {
    let mut out = SuiteReport::new("q-conservation", Some(seed));
    let mut rng = sampling::rng(seed);
    for &r in ranks {
        let name = format!("A{r}");
        let spec = match format!("A{r}~").parse::<QSystemSpec>() {
            Ok(s) => s,
            Err(e) => {
                out.push(name, false, Some(e.to_string()));
                continue;
            }
        };
        let walk = |values: Vec<FastRational>| -> Result<Option<String>, qsystem::QSystemError> {
            let mut state = QState::initial(&values, true)?;
            let initial = q_conserved(&spec, &state)?;
            for step in 1..=steps {
                state = qsystem::q_step(&spec, &state, Direction::Forward)?;
                if q_conserved(&spec, &state)? != initial {
                    return Ok(Some(format!("invariants changed at step {step}")));
                }
            }
            Ok(None)
        };
        let mut failure = None;
        for point in 0..points {
            let values = sampling::positive_rationals(&mut rng, 2 * r).iter().map(FastRational::from).collect();
            match walk(values) {
                Ok(None) => {}
                Ok(Some(msg)) => failure = failure.or(Some(format!("point {point}: {msg}"))),
                Err(e) => failure = failure.or(Some(format!("point {point}: {e}"))),
            }
        }
        let passed = failure.is_none();
        out.push(name, passed, failure.or_else(|| Some(format!("{points} points x {steps} steps"))));
    }
    out
}

/// Random mutation sequences: no index twice in a row, lengths uniform in `1..=max_len`.
fn random_sequence(rng: &mut sampling::SampleRng, unfrozen: &[Label], max_len: usize) -> Vec<Label> {
    let len = rng.gen_range(1..=max_len);
    let mut seq: Vec<Label> = Vec::with_capacity(len);
    while seq.len() < len {
        let k = unfrozen[rng.gen_range(0..unfrozen.len())];
        if unfrozen.len() == 1 || seq.last() != Some(&k) {
            seq.push(k);
        }
    }
    seq
}

/// Work allowed per mutation step of the Laurent suite, in pairs of terms
/// summed over every product and the exact division of that step.
pub const LAURENT_WORK_BUDGET: usize = 500_000;

fn size(f: &RationalFunction) -> usize {
    f.numerator().num_terms() * f.denominator().num_terms()
}

enum SequenceOutcome {
    Laurent,
    NotLaurent(usize),
    /// The product or division needed at this step exceeds the work budget.
    Unverified(usize),
}

fn check_sequence(seed: &Seed, seq: &[Label], budget: usize) -> Result<SequenceOutcome, String> {
    let mut s = seed.clone();
    let mut p = SymbolicTorusPoint::initial(seed, Flavor::A);
    for (step, &k) in seq.iter().enumerate() {
        let mut work = 0usize;
        let admit = |a: &RationalFunction, b: &RationalFunction| {
            work = work.saturating_add(size(a).saturating_mul(size(b)));
            work <= budget
        };
        match p.mutate_a_bounded(&s, k, admit).map_err(|e| e.to_string())? {
            Some(next) => p = next,
            None => return Ok(SequenceOutcome::Unverified(step + 1)),
        }
        s = s.mutate(k).map_err(|e| e.to_string())?;
        if !p.values().iter().all(RationalFunction::is_laurent) {
            return Ok(SequenceOutcome::NotLaurent(step + 1));
        }
    }
    Ok(SequenceOutcome::Laurent)
}

/// Every cluster variable along `sequences` random sequences on `Σ_C` and on
/// the Coxeter word seed (alternating with its reverse) of each type is Laurent.
///
/// A mutation step needing more than `budget` term pairs is not expanded; its
/// sequence is reported as unverified and fails its case.
pub fn laurent(tags: &[TypeTag], sequences: usize, max_len: usize, budget: usize, seed: u64) -> SuiteReport {
    let mut out = SuiteReport::new("laurent", Some(seed));
    let mut rng = sampling::rng(seed);
    for &tag in tags {
        let seeds = catalog(tag).and_then(|cartan| {
            let sc = build_sigma_c(&cartan)?.seed;
            let w = build_word_seed(&cartan, &DoubleReducedWord::coxeter(&cartan))?;
            let wr = build_word_seed(&cartan, &DoubleReducedWord::coxeter_reversed(&cartan))?;
            Ok([("Sigma_C", vec![sc]), ("word", vec![w, wr])])
        });
        let seeds = match seeds {
            Ok(s) => s,
            Err(e) => {
                out.push(tag.to_string(), false, Some(e.to_string()));
                continue;
            }
        };
        for (kind, family) in seeds {
            let (mut laurent, mut unverified) = (0, 0);
            let mut failure = None;
            let mut first_unverified = None;
            for trial in 0..sequences {
                let s = &family[trial % family.len()];
                let seq = random_sequence(&mut rng, &s.unfrozen(), max_len);
                match check_sequence(s, &seq, budget) {
                    Ok(SequenceOutcome::Laurent) => laurent += 1,
                    Ok(SequenceOutcome::NotLaurent(step)) => {
                        failure = failure.or(Some(format!("{seq:?}: not Laurent after step {step}")))
                    }
                    Ok(SequenceOutcome::Unverified(step)) => {
                        unverified += 1;
                        first_unverified = first_unverified.or(Some(format!("{seq:?} at step {step}")));
                    }
                    Err(e) => failure = failure.or(Some(format!("{seq:?}: {e}"))),
                }
            }
            let mut detail = format!("{laurent}/{sequences} sequences Laurent");
            if unverified > 0 {
                detail += &format!(", {unverified} beyond the work budget (first {})", first_unverified.unwrap());
            }
            if let Some(f) = &failure {
                detail += &format!("; {f}");
            }
            out.push(format!("{tag} {kind}"), laurent == sequences, Some(detail));
        }
    }
    out
}

/// Generator axioms for the closed forms of ι and θ in `SL_n`, `2 ≤ n ≤ max_n`.
pub fn involutions(max_n: usize) -> SuiteReport {
    let mut out = SuiteReport::new("involutions", None);
    for n in 2..=max_n {
        out.push_result(format!("SL{n}"), check_involution_axioms(n).map(|c| c.passed()));
    }
    out
}

fn render(m: &RatMatrix) -> String {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rational(m.get(i, j))).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The `SL_2` example: `N`, `B^mod`, `M`, `M′` as text, and the twisted minors
/// of both double reduced words against the displayed monomials in the entries.
pub fn sl2_golden() -> SuiteReport {
    let mut out = SuiteReport::new("sl2-golden", None);
    let matrices = || -> Result<([String; 4], bool), String> {
        let a1 = catalog(TypeTag::Finite(FiniteType { family: crate::cartan::Family::A, rank: 1 }))
            .map_err(|e| e.to_string())?;
        let word = DoubleReducedWord::coxeter(&a1);
        let seed = build_word_seed(&a1, &word).map_err(|e| e.to_string())?;
        let b = LabeledMatrix::new(seed.indices().to_vec(), seed.b().clone());
        let m = twist_matrix_m(&a1).map_err(|e| e.to_string())?;
        let mp = m_prime(&m, &b.neg(), 1);
        let id = RatMatrix::identity(m.matrix().rows());
        let involutions = m.matrix().mul(m.matrix()) == id && mp.matrix().mul(mp.matrix()) == id;
        let rendered = [
            render(twist_matrix_n(&a1).map_err(|e| e.to_string())?.matrix()),
            render(&build_b_mod(&a1, &word).map_err(|e| e.to_string())?.0),
            render(m.matrix()),
            render(mp.matrix()),
        ];
        Ok((rendered, involutions))
    };
    let expected = [
        "1/2 1/2 -1/2; 1/2 1/2 1/2; -1/2 1/2 1/2",
        "1 1 0; -1 0 -1; 0 1 1",
        "0 0 -1; 0 1 0; -1 0 0",
        "0 0 -1; -1 1 -1; -1 0 0",
    ];
    match matrices() {
        Ok((found, involutions)) => {
            for ((name, want), got) in ["N", "B^mod", "M", "M'"].iter().zip(expected).zip(found) {
                let ok = got == want;
                out.push(*name, ok, (!ok).then(|| format!("got {got}, expected {want}")));
            }
            out.push("M and M' are involutions", involutions, None);
        }
        Err(e) => out.push("matrices", false, Some(e)),
    }
    out.push_result("twisted minors", sl2_twisted_minors());
    out
}

fn sl2_twisted_minors() -> Result<bool, String> {
    let err = |e: &dyn Display| e.to_string();
    let vars = Variables::new(["a", "b", "c"]);
    let v = |i| RationalFunction::var(&vars, i);
    let (a, b, c) = (v(0), v(1), v(2));
    let d = a.one_like().add(&b.mul(&c)).checked_div(&a).map_err(|e| err(&e))?;
    let g = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
    let tg = twist(&g).map_err(|e| err(&e))?;
    let a1 = catalog("A1".parse().map_err(|e| err(&e))?).map_err(|e| err(&e))?;
    let inv = |x: &RationalFunction| x.inv().map_err(|e| err(&e));
    // Δ11 = a, Δ12 = b, Δ21 = c, Δ22 = d.
    let word = word_cluster_variables(&tg, &DoubleReducedWord::coxeter(&a1)).map_err(|e| err(&e))?;
    let reversed = word_cluster_variables(&tg, &DoubleReducedWord::coxeter_reversed(&a1)).map_err(|e| err(&e))?;
    let want_word = vec![inv(&c)?, a.clone(), inv(&b)?];
    let want_reversed = vec![inv(&c)?, inv(&b)?.mul(&d).mul(&inv(&c)?), inv(&b)?];
    Ok(word == want_word && reversed == want_reversed && tg.get(1, 1) == &a)
}

/// `Σ_a C_ab x_a = 1` for the normalization exponents and the uniform form of
/// every relation list, over a list of Q-system tags.
pub fn q_relations(tags: &[TypeTag]) -> SuiteReport {
    let mut out = SuiteReport::new("q-relations", None);
    for &tag in tags {
        let r = QSystemSpec::new(tag)
            .and_then(|s| Ok(qsystem::check_uniform_form(&s)? && qsystem::check_normalization(&s)?));
        out.push_result(tag.to_string(), r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_golden_vectors() {
        let r = sl2_golden();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.cases.len(), 6);
    }

    #[test]
    fn equal_arguments_give_equal_bytes() {
        let run = || serde_json::to_string(&q_vs_cluster_numeric(&finite_tags(2), 5, 2, 9)).unwrap();
        assert_eq!(run(), run());
    }

    #[test]
    fn empty_reports_do_not_pass() {
        assert!(!SuiteReport::new("x", None).passed());
        assert!(!sigma_period(&[]).passed());
    }

    #[test]
    fn small_laurent_runs() {
        let tags = finite_tags(1);
        assert!(laurent(&tags, 20, 6, LAURENT_WORK_BUDGET, 0).passed());
        // Nothing is admitted with a zero budget.
        let starved = laurent(&tags, 5, 3, 0, 0);
        assert!(starved.cases.iter().all(|c| !c.passed));
    }
}
