use cluster_dyn::algebra::{int, rat, Rational, Scalar};
use cluster_dyn::groups::{
    characteristic_coefficients, check_involution_axioms, factorization_element, factorization_step, invariant_ratios,
    ldu, sbar, sdoublebar, verify_ensemble, verify_twist_theorem,
};
use cluster_dyn::matrix::RatMatrix;
use cluster_dyn::qsystem::{q_conserved, q_step, Direction, QState, QSystemSpec};
use cluster_dyn::sampling;
use proptest::prelude::*;

fn one() -> Rational {
    int(1)
}

#[test]
fn weyl_representatives_satisfy_braid_relations() {
    for n in 3..=5 {
        for rep in [sbar::<Rational>, sdoublebar::<Rational>] {
            let s = |i| rep(n, i, &one()).unwrap();
            for i in 1..n - 1 {
                let (a, b) = (s(i), s(i + 1));
                assert_eq!(a.mul(&b).mul(&a), b.mul(&a).mul(&b), "n={n} i={i}");
            }
            for i in 1..n {
                for j in i + 2..n {
                    assert_eq!(s(i).mul(&s(j)), s(j).mul(&s(i)));
                }
            }
        }
    }
}

#[test]
fn involution_oracle_up_to_five() {
    for n in 2..=5 {
        let c = check_involution_axioms(n).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn twist_theorem_at_scale() {
    for (n, trials) in [(2, 100), (3, 100), (4, 25), (5, 25)] {
        let r = verify_twist_theorem(n, trials, 2024).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.trials, trials);
    }
}

#[test]
fn ensemble_relations() {
    for n in 2..=4 {
        let r = verify_ensemble(n, 20, 99).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn single_factorization_steps_are_consistent() {
    let mut rng = sampling::rng(17);
    for n in 2..=4 {
        for _ in 0..50 {
            let x = sampling::positive_rationals(&mut rng, 2 * (n - 1));
            let step = factorization_step(n, &x).unwrap();
            assert!(step.consistent().unwrap(), "n={n} x={x:?}");
        }
    }
}

/// `X_i = ∏_j A_j^{B_ij}` with `B = [[0, −C], [C, 0]]` for the symmetric `C` of `A_r`.
fn hand_p_map(a: &[Rational]) -> Vec<Rational> {
    let r = a.len() / 2;
    let c = |i: usize, j: usize| -> i64 {
        match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        }
    };
    (0..2 * r)
        .map(|i| {
            (0..r).fold(one(), |acc, j| {
                let (e, v) = if i < r { (-c(i, j), &a[r + j]) } else { (c(i - r, j), &a[j]) };
                acc.mul(&v.powi(e).unwrap())
            })
        })
        .collect()
}

#[test]
fn q_conserved_matches_the_hand_pipeline() {
    let mut rng = sampling::rng(5);
    for r in 1..=3 {
        let spec: QSystemSpec = format!("A{r}").parse().unwrap();
        for _ in 0..10 {
            let mut state = QState::initial(&sampling::positive_rationals(&mut rng, 2 * r), true).unwrap();
            for _ in 0..4 {
                let x = hand_p_map(&state.values());
                let expected = invariant_ratios(&factorization_element(r + 1, &x).unwrap()).unwrap();
                assert_eq!(q_conserved(&spec, &state).unwrap(), expected);
                state = q_step(&spec, &state, Direction::Forward).unwrap();
            }
        }
    }
}

fn gauss_generic() -> impl Strategy<Value = RatMatrix> {
    (2usize..=4)
        .prop_flat_map(|n| prop::collection::vec(-6i64..=6, n * n).prop_map(move |v| (n, v)))
        .prop_map(|(n, v)| RatMatrix::from_fn(n, n, |i, j| int(v[i * n + j])))
        .prop_filter("nonzero leading minors", |g| (1..=g.rows()).all(|k| !g.leading_minor(k).is_zero()))
}

fn positive_diagonal() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..=9, 1i64..=9), 4).prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ldu_reconstructs(g in gauss_generic()) {
        let d = ldu(&g).unwrap();
        let n = g.rows();
        prop_assert_eq!(d.product(), g);
        prop_assert!(d.diagonal.is_diagonal());
        for i in 0..n {
            prop_assert!(d.lower.get(i, i).is_one() && d.upper.get(i, i).is_one());
            for j in i + 1..n {
                prop_assert!(d.lower.get(i, j).is_zero() && d.upper.get(j, i).is_zero());
            }
        }
    }

    #[test]
    fn invariants_ignore_scalars_and_diagonal_conjugation(g in gauss_generic(), h in positive_diagonal(), c in 1i64..=7) {
        let n = g.rows();
        let before = invariant_ratios(&g).unwrap();
        prop_assert_eq!(invariant_ratios(&g.scale(&int(c))).unwrap(), before.clone());
        let hm = RatMatrix::from_fn(n, n, |i, j| if i == j { h[i].clone() } else { int(0) });
        let conj = hm.mul(&g).mul(&hm.inverse().unwrap());
        prop_assert_eq!(invariant_ratios(&conj).unwrap(), before);
    }

    #[test]
    fn characteristic_coefficients_bracket_trace_and_det(g in gauss_generic()) {
        let e = characteristic_coefficients(&g);
        let n = g.rows();
        let trace = (0..n).fold(int(0), |acc, i| acc + g.get(i, i));
        prop_assert_eq!(e.len(), n + 1);
        prop_assert!(e[0].is_one());
        prop_assert_eq!(&e[1], &trace);
        prop_assert_eq!(&e[n], &g.det());
    }
}
