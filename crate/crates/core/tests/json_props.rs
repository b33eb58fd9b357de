mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use novikov_core::complex::{base_change, BasedChainComplex};
use novikov_core::cut_system::fixtures;
use novikov_core::group_ring::{CohomologyClass, GroupRingElement};
use novikov_core::json::{
    any_complex_from_json, any_complex_to_json, complex_from_json, complex_to_json, cut_system_from_json,
    cut_system_to_json, group_ring_from_json, group_ring_to_json, int_from_json, int_to_json, parse_text,
    rational_from_json, rational_to_json, AnyComplex,
};
use novikov_core::matrix::RingMatrix;
use novikov_core::tower::{MonodromyRep, RepresentationDescriptor};

fn reparse(v: &serde_json::Value) -> serde_json::Value {
    parse_text(&serde_json::to_string_pretty(v).unwrap()).unwrap()
}

fn random_complex(seed: u64) -> BasedChainComplex<GroupRingElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: Vec<usize> = (0..2).map(|_| rng.gen_range(1..=3)).collect();
    let mut d = RingMatrix::<GroupRingElement>::zeros(1, n[0], n[1]);
    for i in 0..n[0] {
        for j in 0..n[1] {
            d.set(i, j, random_laurent(&mut rng, 3, -2, 2, 5));
        }
    }
    let basis = n.iter().enumerate().map(|(i, &k)| (0..k).map(|j| format!("g{i}_{j}")).collect()).collect();
    BasedChainComplex::new(1, basis, vec![d]).unwrap()
}

fn descriptors() -> Vec<RepresentationDescriptor> {
    let xi = CohomologyClass::from_integers(&[1]);
    vec![
        RepresentationDescriptor::Novikov { xi: xi.clone(), cutoff: BigRational::from_integer((-5).into()) },
        RepresentationDescriptor::RationalFnR { xi: xi.clone() },
        RepresentationDescriptor::Scalar { a: q(-7, 3), xi: xi.clone() },
        RepresentationDescriptor::RationalField { basis: vec![], characteristic: None },
        RepresentationDescriptor::RationalField { basis: vec![], characteristic: Some(11) },
        RepresentationDescriptor::ScalarWithBundle {
            a: q(5, 2),
            xi,
            bundle: MonodromyRep::from_integer_matrices(2, &[vec![vec![1, 1], vec![0, 1]]]).unwrap(),
        },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integers_round_trip(digits in "-?[1-9][0-9]{0,40}") {
        let n: BigInt = digits.parse().unwrap();
        prop_assert_eq!(int_from_json(&reparse(&int_to_json(&n)), "$").unwrap(), n);
    }

    #[test]
    fn rationals_round_trip(x in arb_rational()) {
        prop_assert_eq!(rational_from_json(&reparse(&rational_to_json(&x)), "$").unwrap(), x);
    }

    #[test]
    fn group_ring_elements_round_trip(p in arb_element(3, 6)) {
        prop_assert_eq!(group_ring_from_json(&reparse(&group_ring_to_json(&p)), "$").unwrap(), p);
    }

    #[test]
    fn complexes_round_trip_over_every_ring(seed in any::<u64>()) {
        let x = random_complex(seed);
        let back: BasedChainComplex<GroupRingElement> = complex_from_json(&reparse(&complex_to_json(&x))).unwrap();
        prop_assert_eq!(&back, &x);
        for rho in descriptors() {
            let y = AnyComplex::Tower(base_change(&x, &rho).unwrap());
            let doc = reparse(&any_complex_to_json(&y));
            prop_assert_eq!(any_complex_from_json(&doc).unwrap(), y);
        }
    }
}

#[test]
fn cut_system_fixtures_round_trip() {
    for cs in [fixtures::circle(), fixtures::torus(), fixtures::torus_with_attached_loop(), fixtures::circle_with_zeros()] {
        assert_eq!(cut_system_from_json(&reparse(&cut_system_to_json(&cs))).unwrap(), cs);
    }
}

#[test]
fn integer_complexes_round_trip() {
    let big: BigInt = "123456789012345678901234567890".parse().unwrap();
    let d = RingMatrix::from_rows((), vec![vec![big.clone(), BigInt::from(-2)]]).unwrap();
    let x = BasedChainComplex::new((), vec![vec!["a".into()], vec!["b".into(), "c".into()]], vec![d]).unwrap();
    let doc = reparse(&complex_to_json(&x));
    assert_eq!(any_complex_from_json(&doc).unwrap(), AnyComplex::Integer(x));
}

#[test]
fn wrong_ring_is_located() {
    let x = random_complex(3);
    let mut doc = complex_to_json(&x);
    doc["ring"] = serde_json::json!("integer");
    let err = complex_from_json::<GroupRingElement>(&doc).unwrap_err().to_string();
    assert!(err.contains("$.ring"), "{err}");
}
