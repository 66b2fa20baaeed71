use cluster_dyn::algebra::{
    rat, LaurentPolynomial, Monomial, Rational, RationalFunction, Variables,
};
use num_traits::Zero;
use proptest::prelude::*;

fn vars() -> Variables {
    Variables::numbered("X", 3)
}

fn laurent(max_terms: usize, lo: i32, hi: i32) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(
        (prop::collection::vec(lo..=hi, 3), -5i64..=5, 1i64..=3),
        0..=max_terms,
    )
    .prop_map(|ts| {
        let v = vars();
        LaurentPolynomial::from_terms(
            &v,
            ts.into_iter().map(|(e, p, q)| (Monomial::from_exponents(&e), rat(p, q))),
        )
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPolynomial> {
    laurent(3, 0, 2).prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..=9, 1i64..=9, any::<bool>()), 3)
        .prop_map(|v| v.into_iter().map(|(p, q, s)| rat(if s { p } else { -p }, q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in laurent(4, -2, 2), b in laurent(4, -2, 2), c in laurent(4, -2, 2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reduction_preserves_values(n in laurent(4, -1, 2), d in nonzero_poly(), common in nonzero_poly(), x in point()) {
        let raw_num = &n * &common;
        let raw_den = &d * &common;
        let dv = raw_den.evaluate(&x).unwrap();
        prop_assume!(!dv.is_zero());
        let f = RationalFunction::new(raw_num.clone(), raw_den).unwrap();
        prop_assert_eq!(f.evaluate_values(&x).unwrap(), raw_num.evaluate(&x).unwrap() / dv);
    }

    #[test]
    fn laurent_detection_divides_back(q in nonzero_poly(), p in laurent(3, -1, 2), m in prop::collection::vec(-2i32..=2, 3), monomial_den in any::<bool>()) {
        let v = vars();
        let num = &p * &q;
        let den = if monomial_den {
            LaurentPolynomial::monomial(&v, Monomial::from_exponents(&m), rat(2, 3))
        } else {
            q.clone()
        };
        let f = RationalFunction::new(num.clone(), den.clone()).unwrap();
        let l = f.as_laurent().expect("denominator divides");
        prop_assert_eq!(l * &den, num);
    }

    #[test]
    fn leibniz(a in laurent(3, -1, 2), b in nonzero_poly(), c in laurent(3, -1, 2), d in nonzero_poly(), i in 0usize..3) {
        let f = RationalFunction::new(a, b).unwrap();
        let g = RationalFunction::new(c, d).unwrap();
        let lhs = f.try_mul(&g).unwrap().derivative(i);
        let rhs = f.try_mul(&g.derivative(i)).unwrap().try_add(&g.try_mul(&f.derivative(i)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_parse_round_trip(a in laurent(5, -3, 3), b in nonzero_poly()) {
        let v = vars();
        prop_assert_eq!(LaurentPolynomial::parse(&a.to_string(), &v).unwrap(), a.clone());
        let f = RationalFunction::new(a, b).unwrap();
        prop_assert_eq!(RationalFunction::parse(&f.to_string(), &v).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_contains_planted_factor(p in nonzero_poly(), q in nonzero_poly(), c in nonzero_poly()) {
        let a = &p * &c;
        let b = &q * &c;
        let g = cluster_dyn::algebra::poly_gcd(&a, &b);
        prop_assert!(g.div_exact(&c).is_some(), "gcd {} misses factor {}", g, c);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
    }
}
