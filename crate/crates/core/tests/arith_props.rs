use proptest::prelude::*;
use tmzv_core::{Rational, TPoly};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn tpoly() -> impl Strategy<Value = TPoly> {
    prop::collection::vec(rational(), 0..5).prop_map(TPoly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn tpoly_degree_is_additive(p in tpoly(), q in tpoly()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!(p.mul(&q).degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
    }

    #[test]
    fn tpoly_eval_is_ring_homomorphism(p in tpoly(), q in tpoly(), t0 in rational()) {
        prop_assert_eq!(p.mul(&q).eval(&t0), &p.eval(&t0) * &q.eval(&t0));
        prop_assert_eq!(p.add(&q).eval(&t0), &p.eval(&t0) + &q.eval(&t0));
    }

    #[test]
    fn tpoly_json_round_trip(p in tpoly()) {
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<TPoly>(&text).unwrap(), p);
    }
}
