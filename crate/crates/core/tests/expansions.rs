use moments_core::bell::{modified_partial_bell, StirlingTable};
use moments_core::coefficients::{c_coeff, coefficient_table_with};
use moments_core::diffalg::{
    formula_expansion, nth_derivative_expansion, nth_derivative_expansion_with, DiffPolynomial,
};
use moments_core::partition::enumerate_constrained;
use moments_core::poly::{check_main_theorem, RationalPolynomial};
use moments_core::{Cap, Error, Exec, Partition};
use num_bigint::BigInt;

fn cap() -> Cap {
    Cap::default()
}

#[test]
fn sequential_and_parallel_agree() {
    for (n, s) in [(5, 0), (6, 2), (4, 3)] {
        assert_eq!(
            coefficient_table_with(n, s, cap(), Exec::Sequential).unwrap(),
            coefficient_table_with(n, s, cap(), Exec::Parallel).unwrap()
        );
        assert_eq!(
            nth_derivative_expansion_with(n, s, cap(), Exec::Sequential).unwrap(),
            nth_derivative_expansion_with(n, s, cap(), Exec::Parallel).unwrap()
        );
    }
    assert_eq!(
        StirlingTable::build_with(7, cap(), Exec::Sequential).unwrap(),
        StirlingTable::build_with(7, cap(), Exec::Parallel).unwrap()
    );
}

#[test]
fn second_derivative_by_hand() {
    // [(f∘φ)(g∘φ')]'' expanded with the product and chain rules
    let expected = [
        ((2, 0), vec![(1, 2)], 1),
        ((1, 0), vec![(2, 1)], 1),
        ((1, 1), vec![(1, 1), (2, 1)], 2),
        ((0, 1), vec![(3, 1)], 1),
        ((0, 2), vec![(2, 2)], 1),
    ];
    let p = formula_expansion(2, 1, cap()).unwrap();
    assert_eq!(p.len(), expected.len());
    for ((f, g), y, c) in expected {
        let m = moments_core::diffalg::DiffMonomial::new(
            f,
            g,
            moments_core::exponents::Exponents::from_pairs(y),
            Default::default(),
        );
        assert_eq!(p.coeff(&m), BigInt::from(c));
    }
    assert_eq!(p, nth_derivative_expansion(2, 1, cap()).unwrap());
}

#[test]
fn json_round_trip_of_expansions() {
    for (n, s) in [(0, 0), (3, 1), (5, 2)] {
        let p = formula_expansion(n, s, cap()).unwrap();
        assert_eq!(DiffPolynomial::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn cap_is_enforced_everywhere() {
    let small = Cap::new(10);
    assert!(formula_expansion(3, 2, small).is_ok());
    assert!(matches!(
        formula_expansion(4, 2, small),
        Err(Error::CapExceeded { .. })
    ));
    assert!(matches!(
        nth_derivative_expansion(6, 1, small),
        Err(Error::CapExceeded { .. })
    ));
    assert!(matches!(
        enumerate_constrained(11, 0, 0, small),
        Err(Error::CapExceeded { .. })
    ));
    assert!(matches!(
        modified_partial_bell(9, 3, 1, 2, small),
        Err(Error::CapExceeded { .. })
    ));
    assert!(StirlingTable::build(11, small).is_err());
}

#[test]
fn coefficient_rejects_weight_below_shift() {
    let lam = Partition::new(&[2]).unwrap();
    assert!(c_coeff(&lam, 1, 3).is_err());
}

#[test]
fn polynomial_check_uses_every_expansion_term() {
    // φ of degree 4 keeps φ', φ'', φ''', φ'''' nonzero, so no term is invisible
    let f = RationalPolynomial::parse("1,2,-1,1/2,3").unwrap();
    let g = RationalPolynomial::parse("-3,1/5,0,2").unwrap();
    let phi = RationalPolynomial::parse("0,1,1/2,-1/3,1/4").unwrap();
    for n in 0..=5 {
        for s in 0..=2 {
            let r = check_main_theorem(&f, &g, &phi, n, s, cap()).unwrap();
            assert!(r.equal, "n={n} s={s}: {}", r.to_json());
        }
    }
}
