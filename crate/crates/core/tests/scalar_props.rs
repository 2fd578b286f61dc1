//! Property tests for Laurent-polynomial scalars.

use proptest::prelude::*;
use qtri::{GaussianRational, ScalarQ};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn scalar() -> impl Strategy<Value = ScalarQ> {
    prop::collection::vec((-4i64..=4, gaussian()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ScalarQ::zero(), |acc, (e, c)| &acc + &ScalarQ::term(c, e))
    })
}

fn nonzero_point() -> impl Strategy<Value = GaussianRational> {
    gaussian().prop_filter("nonzero", |g| !g.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_commutative_and_associative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &ScalarQ::one(), a.clone());
    }

    #[test]
    fn distributivity(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), q0 in nonzero_point()) {
        let ev = |s: &ScalarQ| s.eval(&q0).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
    }

    #[test]
    fn units_invert(c in nonzero_point(), e in -5i64..=5) {
        let u = ScalarQ::term(c, e);
        prop_assert!(u.is_unit());
        prop_assert_eq!(&u * &u.inv().unwrap(), ScalarQ::one());
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        prop_assert_eq!(qtri::expr::parse_scalar(&a.to_string()).unwrap(), a.clone());
        let json = qtri::json::scalar_to_json(&a);
        prop_assert_eq!(qtri::json::scalar_from_json(&json).unwrap(), a);
    }
}
