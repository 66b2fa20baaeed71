//! Q-systems of simply-laced untwisted and twisted affine type, their normalized
//! forms, and their realization by the cluster automorphism of `Σ_C`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{int, AlgebraError, Rational, RationalFunction, Scalar};
use crate::cartan::{build_sigma_c, catalog, CartanData, CartanError, Family, FiniteType, SigmaC, TypeTag};
use crate::groups::{self, GroupError};
use crate::sampling;
use crate::seeds::{cluster_automorphism, Flavor, SeedError, TorusPoint};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QSystemError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("division by zero computing level {level}: Q({node}) vanishes at the dividing layer")]
    ZeroDivisor { level: i64, node: usize },
    #[error("Q({node}) vanishes at level {level}")]
    Vanishing { level: i64, node: usize },
    #[error("expected {expected} values per layer, got {found}")]
    Shape { expected: usize, found: usize },
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The right-hand monomial `∏_b (Q_n^{(b)})^{e_b}` of the relation at node `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub node: usize,
    /// `(b, e_b)` with `e_b > 0`, increasing in `b`.
    pub factors: Vec<(usize, u32)>,
}

impl Relation {
    fn evaluate<F: Scalar>(&self, layer: &[F]) -> F {
        let mut out = layer[0].one_like();
        for &(b, e) in &self.factors {
            for _ in 0..e {
                out = out.mul(&layer[b - 1]);
            }
        }
        out
    }
}

impl fmt::Display for Relation {
    /// `(Q2_n)^2 = Q2_{n-1} Q2_{n+1} + Q1_n Q3_n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.node;
        write!(f, "(Q{a}_n)^2 = Q{a}_{{n-1}} Q{a}_{{n+1}} + {}", monomial_string(&self.factors))
    }
}

fn monomial_string(factors: &[(usize, u32)]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = factors
        .iter()
        .map(|&(b, e)| if e == 1 { format!("Q{b}_n") } else { format!("Q{b}_n^{e}") })
        .collect();
    parts.join(" ")
}

/// Collects `(b, e)` pairs, dropping the convention `Q^{(0)} = 1` and zero exponents.
fn collect_factors(pairs: impl IntoIterator<Item = (usize, u32)>) -> Vec<(usize, u32)> {
    let mut v: Vec<(usize, u32)> = pairs.into_iter().filter(|&(b, e)| b > 0 && e > 0).collect();
    v.sort_unstable();
    v
}

/// A Q-system of affine type `X_N^{(κ)}` with its finite type `Y_M`.
#[derive(Clone, Debug)]
pub struct QSystemSpec {
    affine: TypeTag,
    cartan: CartanData,
    relations: Vec<Relation>,
}

impl QSystemSpec {
    /// A finite tag selects the Q-system whose `Y_M` it names.
    pub fn new(tag: TypeTag) -> Result<Self, QSystemError> {
        let finite = match tag {
            TypeTag::Finite(t) => return Self::for_finite(t),
            TypeTag::Untwisted(t) if !t.family.is_simply_laced() => {
                return Err(QSystemError::Unsupported(format!(
                    "{tag}: untwisted nonsimply-laced Q-systems have no realization on Σ_C"
                )))
            }
            TypeTag::Untwisted(t) => t,
            TypeTag::Twisted { .. } => tag.folded(),
        };
        let cartan = catalog(TypeTag::Finite(finite))?;
        let r = cartan.rank();
        let relations = (1..=r)
            .map(|a| Relation {
                node: a,
                factors: collect_factors((1..=r).filter(|&b| b != a).map(|b| (b, (-cartan.entry(b, a)) as u32))),
            })
            .collect();
        Ok(QSystemSpec { affine: tag, cartan, relations })
    }

    /// Simply-laced `X_N` gives `X_N^{(1)}`; `B_r`, `C_r`, `F_4`, `G_2` give
    /// `D_{r+1}^{(2)}`, `A_{2r-1}^{(2)}`, `E_6^{(2)}`, `D_4^{(3)}`.
    pub fn for_finite(t: FiniteType) -> Result<Self, QSystemError> {
        let base = |family, rank| FiniteType { family, rank };
        let tag = match t.family {
            Family::A | Family::D | Family::E => TypeTag::Untwisted(t),
            Family::B => TypeTag::Twisted { base: base(Family::D, t.rank + 1), kappa: 2 },
            Family::C => TypeTag::Twisted { base: base(Family::A, 2 * t.rank - 1), kappa: 2 },
            Family::F => TypeTag::Twisted { base: base(Family::E, 6), kappa: 2 },
            Family::G => TypeTag::Twisted { base: base(Family::D, 4), kappa: 3 },
        };
        Self::new(tag)
    }

    /// The affine type `X_N^{(κ)}`.
    pub fn tag(&self) -> TypeTag {
        self.affine
    }

    /// Cartan data of `Y_M`.
    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(ToString::to_string).collect()
    }

    pub fn sigma_c(&self) -> Result<SigmaC, QSystemError> {
        Ok(build_sigma_c(&self.cartan)?)
    }
}

impl std::str::FromStr for QSystemSpec {
    type Err = QSystemError;

    fn from_str(s: &str) -> Result<Self, QSystemError> {
        Self::new(s.parse()?)
    }
}

/// The relation lists as they appear in the definition of the Q-system, one
/// pattern per family, written independently of the Cartan matrix of `Y_M`:
/// untwisted simply-laced types use the Dynkin neighbours of `X_N`.
pub fn displayed_relations(tag: TypeTag) -> Result<Vec<String>, QSystemError> {
    let lists: Vec<Vec<(usize, u32)>> = match tag {
        TypeTag::Finite(_) => return Err(QSystemError::Unsupported(format!("{tag} is not affine"))),
        TypeTag::Untwisted(t) if t.family.is_simply_laced() => {
            let c = catalog(TypeTag::Finite(t))?;
            let r = c.rank();
            (1..=r).map(|a| (1..=r).filter(|&b| b != a && c.entry(b, a) == -1).map(|b| (b, 1)).collect()).collect()
        }
        TypeTag::Untwisted(_) => {
            return Err(QSystemError::Unsupported(format!(
                "{tag}: untwisted nonsimply-laced Q-systems have no realization on Σ_C"
            )))
        }
        TypeTag::Twisted { base, kappa } => match (base.family, kappa) {
            (Family::A, 2) => {
                let r = base.rank.div_ceil(2);
                let mut v: Vec<Vec<(usize, u32)>> = (1..r).map(|a| vec![(a - 1, 1), (a + 1, 1)]).collect();
                v.push(vec![(r - 1, 2)]);
                v
            }
            (Family::D, 2) => {
                let r = base.rank - 1;
                let mut v: Vec<Vec<(usize, u32)>> = (1..r - 1).map(|a| vec![(a - 1, 1), (a + 1, 1)]).collect();
                v.push(vec![(r - 2, 1), (r, 2)]);
                v.push(vec![(r - 1, 1)]);
                v
            }
            (Family::E, 2) => vec![vec![(2, 1)], vec![(1, 1), (3, 1)], vec![(2, 2), (4, 1)], vec![(3, 1)]],
            (Family::D, 3) => vec![vec![(2, 1)], vec![(1, 3)]],
            _ => unreachable!("validated at parse time"),
        },
    };
    Ok(lists
        .into_iter()
        .enumerate()
        .map(|(p, factors)| Relation { node: p + 1, factors: collect_factors(factors) }.to_string())
        .collect())
}

/// The uniform product form reproduces the displayed relation list.
pub fn check_uniform_form(spec: &QSystemSpec) -> Result<bool, QSystemError> {
    Ok(spec.relation_strings() == displayed_relations(spec.tag())?)
}

/// Two consecutive layers `(Q_n, Q_{n+1})` of a Q-system orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct QState<F> {
    level: i64,
    current: Vec<F>,
    next: Vec<F>,
    normalized: bool,
}

impl<F: Scalar> QState<F> {
    /// Every entry must be nonzero.
    pub fn new(level: i64, current: Vec<F>, next: Vec<F>, normalized: bool) -> Result<Self, QSystemError> {
        if current.len() != next.len() || current.is_empty() {
            return Err(QSystemError::Shape { expected: current.len().max(1), found: next.len() });
        }
        for (offset, layer) in [(0, &current), (1, &next)] {
            if let Some(p) = layer.iter().position(Scalar::is_zero) {
                return Err(QSystemError::Vanishing { level: level + offset, node: p + 1 });
            }
        }
        Ok(QState { level, current, next, normalized })
    }

    /// Layers `0, 1` from the `2r` values `(Q_0^{(1..r)}, Q_1^{(1..r)})`.
    pub fn initial(values: &[F], normalized: bool) -> Result<Self, QSystemError> {
        if !values.len().is_multiple_of(2) || values.is_empty() {
            return Err(QSystemError::Shape { expected: 2 * (values.len() / 2).max(1), found: values.len() });
        }
        let r = values.len() / 2;
        Self::new(0, values[..r].to_vec(), values[r..].to_vec(), normalized)
    }

    /// The level `n` of the first layer.
    pub fn level(&self) -> i64 {
        self.level
    }

    /// `Q_n`.
    pub fn current(&self) -> &[F] {
        &self.current
    }

    /// `Q_{n+1}`.
    pub fn next(&self) -> &[F] {
        &self.next
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `(Q_n, Q_{n+1})` concatenated, matching the cluster `(A_1, …, A_{2r})`.
    pub fn values(&self) -> Vec<F> {
        self.current.iter().chain(&self.next).cloned().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Solves the relation centred at `middle` for the layer beyond `outer`:
/// `(Q_mid² ± P(Q_mid)) / Q_outer`, with `+` when normalized.
fn solve_layer<F: Scalar>(
    spec: &QSystemSpec,
    outer: &[F],
    middle: &[F],
    normalized: bool,
    level: i64,
) -> Result<Vec<F>, QSystemError> {
    spec.relations
        .iter()
        .map(|rel| {
            let a = rel.node - 1;
            let sq = middle[a].mul(&middle[a]);
            let p = rel.evaluate(middle);
            let num = if normalized { sq.add(&p) } else { sq.sub(&p) };
            num.checked_div(&outer[a]).map_err(|_| QSystemError::ZeroDivisor { level, node: rel.node })
        })
        .collect()
}

/// One step of the recurrence. Forward returns `(Q_{n+1}, Q_{n+2})`, backward
/// `(Q_{n-1}, Q_n)`.
pub fn q_step<F: Scalar>(spec: &QSystemSpec, state: &QState<F>, direction: Direction) -> Result<QState<F>, QSystemError> {
    let r = spec.rank();
    if state.current.len() != r {
        return Err(QSystemError::Shape { expected: r, found: state.current.len() });
    }
    let n = state.level;
    match direction {
        Direction::Forward => {
            let layer = solve_layer(spec, &state.current, &state.next, state.normalized, n + 2)?;
            QState::new(n + 1, state.next.clone(), layer, state.normalized)
        }
        Direction::Backward => {
            let layer = solve_layer(spec, &state.next, &state.current, state.normalized, n - 1)?;
            QState::new(n - 1, layer, state.current.clone(), state.normalized)
        }
    }
}

/// Layers `Q_0, …, Q_{steps+1}` from an initial state. On failure the layers
/// computed so far are returned with the error; a vanishing layer is included.
pub fn orbit<F: Scalar>(
    spec: &QSystemSpec,
    initial: &QState<F>,
    steps: usize,
) -> (Vec<Vec<F>>, Option<QSystemError>) {
    let mut layers = vec![initial.current.clone(), initial.next.clone()];
    for _ in 0..steps {
        let len = layers.len();
        let level = initial.level + len as i64;
        match solve_layer(spec, &layers[len - 2], &layers[len - 1], initial.normalized, level) {
            Ok(layer) => {
                let zero = layer.iter().position(Scalar::is_zero);
                layers.push(layer);
                if let Some(p) = zero {
                    return (layers, Some(QSystemError::Vanishing { level, node: p + 1 }));
                }
            }
            Err(e) => return (layers, Some(e)),
        }
    }
    (layers, None)
}

/// Phases `ε_a = exp(iπ x_a)` relating `Q̃ = εQ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizationExponents {
    #[serde(serialize_with = "serialize_rationals")]
    pub x: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::algebra::format_rational))
}

impl NormalizationExponents {
    /// `Σ_a C_ab x_a = 1` for every b, i.e. `∏_a ε_a^{C_ab} = −1`.
    pub fn check(&self, cartan: &CartanData) -> bool {
        let r = cartan.rank();
        (1..=r).all(|b| (1..=r).map(|a| int(cartan.entry(a, b)) * &self.x[a - 1]).sum::<Rational>() == int(1))
    }

    /// `ε_a ∈ {±1}` when every `x_a` is an integer.
    pub fn integral_signs(&self) -> Option<Vec<i64>> {
        self.x
            .iter()
            .map(|x| x.is_integer().then(|| if (x.to_integer() % 2u8) == 0u8.into() { 1 } else { -1 }))
            .collect()
    }
}

/// `x = (C^t)^{-1}·(1, …, 1)`.
pub fn normalization_exponents(cartan: &CartanData) -> Result<NormalizationExponents, QSystemError> {
    let inv = cartan.inverse()?;
    let r = cartan.rank();
    // (C^t)^{-1} = (C^{-1})^t, so x_a = Σ_b (C^{-1})_{ba}.
    let x = (0..r).map(|a| (0..r).map(|b| inv.get(b, a).clone()).sum()).collect();
    Ok(NormalizationExponents { x })
}

/// Phase bookkeeping for `Q̃ = εQ`: in every relation the product term picks up
/// exactly one extra factor `e^{iπ}` relative to `ε_a²`, which turns the
/// ordinary relation into the normalized one.
pub fn check_normalization(spec: &QSystemSpec) -> Result<bool, QSystemError> {
    let eps = normalization_exponents(spec.cartan())?;
    Ok(spec.relations.iter().all(|rel| {
        let phase: Rational = rel.factors.iter().map(|&(b, e)| int(i64::from(e)) * &eps.x[b - 1]).sum();
        let excess = phase - int(2) * &eps.x[rel.node - 1] - int(1);
        excess.is_integer() && excess.to_integer() % 2 == 0.into()
    }))
}

/// Where cluster variables and normalized Q-values first disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub trial: usize,
    pub node: usize,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QvsClusterReport {
    pub tag: String,
    pub finite_type: String,
    pub mode: String,
    pub depth: usize,
    pub trials: usize,
    pub compared: usize,
    /// `A_k^{(i+r)} = A_{k+1}^{(i)}` along the orbit.
    pub shift_consistent: bool,
    pub first_mismatch: Option<Mismatch>,
    pub passed: bool,
}

/// Compares `A_k^{(i)}` of `μ̂_σ^k(Σ_C)` with `Q̃_k^{(i)}` for `k ≤ depth`.
fn compare_orbits<F: Scalar>(
    spec: &QSystemSpec,
    sigma: &SigmaC,
    initial: TorusPoint<F>,
    depth: usize,
) -> Result<(usize, Option<(usize, usize)>, bool), QSystemError> {
    let r = spec.rank();
    let mut points = vec![initial];
    for _ in 0..=depth {
        let p = cluster_automorphism(&sigma.seed, &sigma.sequence, &sigma.sigma, points.last().unwrap(), false)?;
        points.push(p);
    }
    let mut state = QState::initial(points[0].values(), true)?;
    let mut compared = 0;
    let mut mismatch = None;
    for (k, point) in points.iter().enumerate().take(depth + 1) {
        if k > 0 {
            state = q_step(spec, &state, Direction::Forward)?;
        }
        for i in 0..r {
            compared += 1;
            if mismatch.is_none() && point.values()[i] != state.current()[i] {
                mismatch = Some((i + 1, k));
            }
        }
    }
    let shift = points.windows(2).all(|w| (0..r).all(|i| w[0].values()[i + r] == w[1].values()[i]));
    Ok((compared, mismatch, shift))
}

fn report(
    spec: &QSystemSpec,
    mode: &str,
    depth: usize,
    trials: usize,
    compared: usize,
    shift_consistent: bool,
    first_mismatch: Option<Mismatch>,
) -> QvsClusterReport {
    QvsClusterReport {
        tag: spec.tag().to_string(),
        finite_type: spec.cartan().tag().map(|t| t.to_string()).unwrap_or_default(),
        mode: mode.into(),
        depth,
        trials,
        compared,
        shift_consistent,
        passed: shift_consistent && first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Symbolic comparison from the generic initial cluster `(A_1, …, A_{2r})`.
pub fn q_vs_cluster(spec: &QSystemSpec, depth: usize) -> Result<QvsClusterReport, QSystemError> {
    let sigma = spec.sigma_c()?;
    let initial = TorusPoint::<RationalFunction>::initial(&sigma.seed, Flavor::A);
    let (compared, mismatch, shift) = compare_orbits(spec, &sigma, initial, depth)?;
    let first = mismatch.map(|(node, level)| Mismatch { trial: 0, node, level });
    Ok(report(spec, "symbolic", depth, 1, compared, shift, first))
}

/// Exact comparison at `trials` random positive rational initial clusters.
pub fn q_vs_cluster_numeric(
    spec: &QSystemSpec,
    depth: usize,
    trials: usize,
    seed: u64,
) -> Result<QvsClusterReport, QSystemError> {
    let sigma = spec.sigma_c()?;
    let mut rng = sampling::rng(seed);
    let mut total = 0;
    let mut shift_all = true;
    let mut first = None;
    for trial in 0..trials {
        let values = sampling::positive_rationals(&mut rng, sigma.seed.len());
        let initial = TorusPoint::new(Flavor::A, sigma.seed.indices().to_vec(), values)?;
        let (compared, mismatch, shift) = compare_orbits(spec, &sigma, initial, depth)?;
        total += compared;
        shift_all &= shift;
        if first.is_none() {
            first = mismatch.map(|(node, level)| Mismatch { trial, node, level });
        }
    }
    Ok(report(spec, "numeric", depth, trials, total, shift_all, first))
}

/// Conjugation invariants of the factorization element attached to a Q-state of
/// type `A_r`: the cluster `(Q̃_n, Q̃_{n+1})` is pushed to X-coordinates by the
/// p-map of `Σ_C` and the invariant ratios of `(∏F_iX_i^{ω_i^∨})(∏E_iX_{i+r}^{ω_i^∨})`
/// in `GL_{r+1}` are returned. Conserved by the normalized recurrence.
pub fn q_conserved<F: Scalar>(spec: &QSystemSpec, state: &QState<F>) -> Result<Vec<F>, QSystemError> {
    match spec.cartan().tag() {
        Some(TypeTag::Finite(t)) if t.family == Family::A => {}
        _ => {
            return Err(QSystemError::Unsupported(format!(
                "{}: conserved quantities are computed through SL_n and need type A",
                spec.tag()
            )))
        }
    }
    if !state.is_normalized() {
        return Err(QSystemError::Unsupported("conservation is stated for the normalized recurrence".into()));
    }
    let sigma = spec.sigma_c()?;
    let a = TorusPoint::new(Flavor::A, sigma.seed.indices().to_vec(), state.values())?;
    let x = a.p_map(&sigma.seed)?;
    let g = groups::factorization_element(spec.rank() + 1, x.values())?;
    Ok(groups::invariant_ratios(&g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Variables};

    fn spec(s: &str) -> QSystemSpec {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_one_orbit() {
        let s = spec("A1~");
        let st = QState::initial(&ints(&[1, 1]), true).unwrap();
        let (layers, err) = orbit(&s, &st, 4);
        assert!(err.is_none());
        let flat: Vec<Rational> = layers.into_iter().map(|l| l[0].clone()).collect();
        assert_eq!(flat, ints(&[1, 1, 2, 5, 13, 34]));
    }

    #[test]
    fn forward_then_backward() {
        for t in ["A3~", "D4(3)", "A5(2)", "D4(2)", "E6(2)", "D3(2)"] {
            let s = spec(t);
            let r = s.rank();
            let st = QState::initial(&(1..=2 * r as i64).map(|k| rat(k, 3)).collect::<Vec<_>>(), true).unwrap();
            let fwd = q_step(&s, &st, Direction::Forward).unwrap();
            assert_eq!(fwd.level(), 1);
            assert_eq!(q_step(&s, &fwd, Direction::Backward).unwrap(), st, "{t}");
        }
    }

    #[test]
    fn g2_relation_has_a_cube() {
        let s = spec("D4(3)");
        assert_eq!(s.cartan().tag().unwrap().to_string(), "G2");
        assert_eq!(s.relation_strings()[1], "(Q2_n)^2 = Q2_{n-1} Q2_{n+1} + Q1_n^3");
    }

    #[test]
    fn uniform_form_matches_the_lists() {
        for tag in TypeTag::all_twisted_up_to(8) {
            let s = QSystemSpec::new(tag).unwrap();
            assert!(check_uniform_form(&s).unwrap(), "{tag}: {:?}", s.relation_strings());
        }
        assert_eq!(
            displayed_relations(spec("E6(2)").tag()).unwrap()[2],
            "(Q3_n)^2 = Q3_{n-1} Q3_{n+1} + Q2_n^2 Q4_n"
        );
        // A_{2r-1}^(2) ends with (Q^{(r-1)})^2; the first relation drops Q^{(0)} = 1.
        let a5 = displayed_relations(spec("A5(2)").tag()).unwrap();
        assert_eq!(a5[0], "(Q1_n)^2 = Q1_{n-1} Q1_{n+1} + Q2_n");
        assert_eq!(a5[2], "(Q3_n)^2 = Q3_{n-1} Q3_{n+1} + Q2_n^2");
        for t in ["A4~", "D5~", "E6~"] {
            assert!(check_uniform_form(&spec(t)).unwrap(), "{t}");
        }
    }

    #[test]
    fn unsupported_tags() {
        assert!(matches!("B3~".parse::<QSystemSpec>(), Err(QSystemError::Unsupported(_))));
        assert!(matches!("A2(2)".parse::<QSystemSpec>(), Err(QSystemError::Cartan(CartanError::Unsupported(_)))));
        let b3 = spec("B3");
        assert_eq!(b3.tag().to_string(), "D4(2)");
        assert_eq!(spec("C2").tag().to_string(), "A3(2)");
        assert_eq!(spec("B2").tag().to_string(), "D3(2)");
    }

    #[test]
    fn exponents() {
        let x = |t: &str| normalization_exponents(&crate::cartan::catalog_str(t).unwrap()).unwrap();
        assert_eq!(x("A1").x, vec![rat(1, 2)]);
        assert_eq!(x("A2").x, ints(&[1, 1]));
        assert_eq!(x("A2").integral_signs(), Some(vec![-1, -1]));
        for t in FiniteType::all_up_to(8) {
            let c = catalog(TypeTag::Finite(t)).unwrap();
            assert!(x(&t.to_string()).check(&c), "{t}");
            assert!(check_normalization(&QSystemSpec::for_finite(t).unwrap()).unwrap(), "{t}");
        }
        assert!(normalization_exponents(&crate::cartan::catalog_str("A2~").unwrap()).is_err());
    }

    #[test]
    fn rescaling_by_signs_intertwines_the_two_recurrences() {
        for t in ["A2", "D4", "E8", "B2", "G2", "F4"] {
            let s = spec(t);
            let Some(signs) = normalization_exponents(s.cartan()).unwrap().integral_signs() else { continue };
            let start: Vec<Rational> = (1..=2 * s.rank() as i64).map(|k| rat(k + 1, k)).collect();
            let plain = QState::initial(&start, false).unwrap();
            let eps = |layer: &[Rational]| -> Vec<Rational> {
                layer.iter().zip(&signs).map(|(q, &e)| q * int(e)).collect()
            };
            let mut tilde = QState::initial(&[eps(plain.current()), eps(plain.next())].concat(), true).unwrap();
            let mut plain = plain;
            for _ in 0..4 {
                plain = q_step(&s, &plain, Direction::Forward).unwrap();
                tilde = q_step(&s, &tilde, Direction::Forward).unwrap();
                assert_eq!(tilde.next(), eps(plain.next()).as_slice(), "{t}");
            }
        }
    }

    #[test]
    fn rank_one_cluster_by_hand() {
        let s = spec("A1");
        let report = q_vs_cluster(&s, 3).unwrap();
        assert!(report.passed, "{report:?}");
        let vars = Variables::new(["A1", "A2"]);
        let a = |i| RationalFunction::var(&vars, i);
        let st = QState::initial(&[a(0), a(1)], true).unwrap();
        let q2 = q_step(&s, &st, Direction::Forward).unwrap().next()[0].clone();
        let expected = a(1).mul(&a(1)).add(&a(0).one_like()).checked_div(&a(0)).unwrap();
        assert_eq!(q2, expected);
    }

    #[test]
    fn small_symbolic_and_numeric_runs() {
        for t in ["A2", "G2"] {
            assert!(q_vs_cluster(&spec(t), 3).unwrap().passed, "{t}");
        }
        let r = q_vs_cluster_numeric(&spec("C3"), 6, 3, 1).unwrap();
        assert!(r.passed && r.compared == 3 * 7 * 3, "{r:?}");
    }

    #[test]
    fn vanishing_orbit_reports_partial_table() {
        // Unnormalized A1 from (1,1): Q_2 = 1 - 1 = 0.
        let s = spec("A1~");
        let st = QState::initial(&ints(&[1, 1]), false).unwrap();
        let (layers, err) = orbit(&s, &st, 5);
        assert_eq!(layers.len(), 3);
        assert_eq!(err, Some(QSystemError::Vanishing { level: 2, node: 1 }));
    }

    #[test]
    fn conserved_quantities_are_type_a_only() {
        let st = QState::initial(&ints(&[1, 2, 3, 4]), true).unwrap();
        assert!(matches!(q_conserved(&spec("B2"), &st), Err(QSystemError::Unsupported(_))));
        let s = spec("A1");
        let mut st = QState::initial(&ints(&[1, 2]), true).unwrap();
        let before = q_conserved(&s, &st).unwrap();
        for _ in 0..5 {
            st = q_step(&s, &st, Direction::Forward).unwrap();
        }
        assert_eq!(q_conserved(&s, &st).unwrap(), before);
    }
}
