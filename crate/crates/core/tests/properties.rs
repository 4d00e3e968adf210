use moments_core::bell::YPolynomial;
use moments_core::coefficients::{c_coeff, c_coeff_by_recurrence, faa_di_bruno_coeff};
use moments_core::exponents::Exponents;
use moments_core::poly::RationalPolynomial;
use moments_core::symmetric::{elementary_moments, newton_residual, subtract_transform};
use moments_core::{Multiset, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..8, 0..7).prop_map(|parts| Partition::new(&parts).unwrap())
}

fn rational_poly() -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec((-9i64..=9, 1i64..=6), 0..5).prop_map(|cs| {
        RationalPolynomial::from_coeffs(
            cs.into_iter()
                .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    })
}

fn y_poly() -> impl Strategy<Value = YPolynomial> {
    prop::collection::vec(
        (prop::collection::vec((1u32..5, 1u32..3), 0..3), -5i64..=5),
        0..4,
    )
    .prop_map(|terms| {
        let mut p = YPolynomial::zero();
        for (exps, c) in terms {
            p.add_term(Exponents::from_pairs(exps), BigInt::from(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn partition_is_order_insensitive(mut parts in prop::collection::vec(1u32..10, 0..8)) {
        let a = Partition::new(&parts).unwrap();
        parts.reverse();
        let b = Partition::new(&parts).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.weight(), parts.iter().map(|&p| u64::from(p)).sum::<u64>());
        prop_assert_eq!(a.length(), parts.len() as u64);
        prop_assert_eq!(Partition::new(&a.parts()).unwrap(), a);
    }

    #[test]
    fn partition_serde_round_trip(p in partition()) {
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn union_adds_weight_and_length(a in partition(), b in partition()) {
        let u = a.union(&b);
        prop_assert_eq!(u.weight(), a.weight() + b.weight());
        prop_assert_eq!(u.length(), a.length() + b.length());
        prop_assert!(a.is_contained_in(&u) && b.is_contained_in(&u));
        prop_assert_eq!(u, b.union(&a));
    }

    #[test]
    fn shift_up_then_down(p in partition(), s in 0u32..5) {
        let up = p.shift_up(s);
        prop_assert_eq!(up.weight(), p.weight() + u64::from(s) * p.length());
        prop_assert_eq!(up.shift_down(s).unwrap(), p.clone());
        prop_assert_eq!(up.truncate_above(s), up);
    }

    #[test]
    fn truncation_keeps_large_parts(p in partition(), s in 0u32..8) {
        let t = p.truncate_above(s);
        prop_assert!(t.parts().iter().all(|&x| x > s));
        prop_assert!(t.is_contained_in(&p));
        prop_assert_eq!(t.length(), p.parts().iter().filter(|&&x| x > s).count() as u64);
    }

    #[test]
    fn coefficients_match_recurrence(p in partition(), s in 0u32..3, r in 0u32..3) {
        let rs = u64::from(r) * u64::from(s);
        prop_assume!(p.weight() >= rs);
        let closed = c_coeff(&p, r, s).unwrap();
        prop_assert_eq!(c_coeff_by_recurrence(&p, r, s).unwrap(), closed.clone());
        if r == 0 {
            prop_assert_eq!(closed, faa_di_bruno_coeff(&p));
        }
    }

    #[test]
    fn newton_holds_for_large_entries(values in prop::collection::vec(0u64..1000, 0..10), r in 1u32..12) {
        let b = Multiset::from_u64s(&values);
        prop_assert!(newton_residual(&b, r).unwrap().is_zero());
    }

    #[test]
    fn subtract_transform_matches_direct(values in prop::collection::vec(0u64..50, 1..8), pick in any::<prop::sample::Index>(), c in 0u64..50) {
        let l = values[pick.index(values.len())];
        prop_assume!(c <= l);
        let b = Multiset::from_u64s(&values);
        let mut replaced = values.clone();
        let pos = replaced.iter().position(|&v| v == l).unwrap();
        replaced[pos] = l - c;
        let expected = elementary_moments(&Multiset::from_u64s(&replaced), values.len());
        let got = subtract_transform(&b, &BigInt::from(l), &BigInt::from(c), values.len()).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn polynomial_ring_laws(a in rational_poly(), b in rational_poly(), c in rational_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn polynomial_calculus_rules(a in rational_poly(), b in rational_poly()) {
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
        prop_assert_eq!(a.compose(&b).derivative(), &a.derivative().compose(&b) * &b.derivative());
        prop_assert_eq!(RationalPolynomial::parse(&a.to_literal()).unwrap(), a.clone());
        let x = BigRational::new(BigInt::from(3), BigInt::from(7));
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn y_derivation_is_leibniz(p in y_poly(), q in y_poly()) {
        prop_assert_eq!(p.mul(&q).derive(), p.derive().mul(&q).add(&p.mul(&q.derive())));
        prop_assert_eq!(YPolynomial::from_json(&p.to_json()).unwrap(), p.clone());
        prop_assert_eq!(p.shift(2).derive(), p.derive().shift(2));
    }
}
