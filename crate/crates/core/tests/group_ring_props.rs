mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use novikov_core::group_ring::{CohomologyClass, ExponentVector, GroupRingElement};
use novikov_core::ring::Ring;

fn top_level_defined(p: &GroupRingElement, xi: &CohomologyClass) -> Option<(num_rational::BigRational, BigInt)> {
    if p.is_zero() {
        None
    } else {
        p.xi_degree_and_top(xi).unwrap()
    }
}

proptest! {
    #[test]
    fn weight_is_additive(
        xi in arb_class(3),
        a in prop::collection::vec(-9i64..=9, 3),
        b in prop::collection::vec(-9i64..=9, 3),
    ) {
        let (a, b) = (ExponentVector(a), ExponentVector(b));
        prop_assert_eq!(xi.weight(&a.plus(&b)).unwrap(), xi.weight(&a).unwrap() + xi.weight(&b).unwrap());
    }

    #[test]
    fn negative_elements_closed_under_sum_and_product(
        (xi, p, r) in arb_class(2).prop_flat_map(|xi| (Just(xi.clone()), arb_negative(xi.clone(), 4), arb_negative(xi, 4)))
    ) {
        prop_assert!(p.is_xi_negative(&xi).unwrap());
        prop_assert!(p.add(&r).is_xi_negative(&xi).unwrap());
        prop_assert!(p.mul(&r).is_xi_negative(&xi).unwrap());
    }

    #[test]
    fn deleting_terms_above_the_degree_changes_nothing(xi in arb_class(2), p in arb_element(2, 6)) {
        if let Some((d, v)) = top_level_defined(&p, &xi) {
            let cut = p.truncate_above(&xi, &d);
            prop_assert_eq!(cut.xi_degree_and_top(&xi).unwrap(), Some((d, v)));
        }
    }

    #[test]
    fn degree_and_top_are_multiplicative(xi in arb_class(2), p in arb_element(2, 4), r in arb_element(2, 4)) {
        let pr = p.mul(&r);
        if let (Some((dp, vp)), Some((dr, vr)), Some((d, v))) =
            (top_level_defined(&p, &xi), top_level_defined(&r, &xi), top_level_defined(&pr, &xi))
        {
            prop_assert_eq!(d, dp + dr);
            prop_assert_eq!(v, vp * vr);
        }
    }

    #[test]
    fn parse_accepts_rendered_polynomials(p in arb_element(2, 5)) {
        let mut s = String::from("0");
        for (e, c) in p.terms() {
            let sign = if c.is_negative() { '-' } else { '+' };
            s.push_str(&format!(" {sign} {}*t1^{}*t2^{}", c.abs(), e.0[0], e.0[1]));
        }
        prop_assert_eq!(GroupRingElement::parse(2, &s).unwrap(), p);
    }
}

#[test]
fn level_sums_that_cancel_have_no_degree() {
    let xi = CohomologyClass::from_integers(&[1, 1]);
    assert_eq!(gr(2, "t1 - t2").xi_degree_and_top(&xi).unwrap(), None);
    let (d, v) = gr(2, "3*t1^2 - t2 + 5").xi_degree_and_top(&xi).unwrap().unwrap();
    assert_eq!((d, v.abs()), (q(2, 1), BigInt::from(3)));
}
