mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use novikov_core::complex::{base_change, collapse, verify_witness, BasedChainComplex};
use novikov_core::cut_system::{build_complex, fixtures};
use novikov_core::group_ring::{CohomologyClass, GroupRingElement};
use novikov_core::matrix::RingMatrix;
use novikov_core::tower::{MonodromyRep, RepresentationDescriptor};

/// Laurent complex `C_0 <- C_1 <- C_2` built as `U0 D1 U1^-1`, `U1 D2 U2^-1` with `D1 D2 = 0`.
fn random_laurent_complex(seed: u64) -> BasedChainComplex<GroupRingElement> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
    let k1 = rng.gen_range(0..=n[0].min(n[1]));
    let k2 = rng.gen_range(0..=(n[1] - k1).min(n[2]));
    let mut d1 = RingMatrix::<GroupRingElement>::zeros(1, n[0], n[1]);
    for i in 0..k1 {
        d1.set(i, i, random_laurent(&mut rng, 2, -1, 1, 3));
    }
    let mut d2 = RingMatrix::<GroupRingElement>::zeros(1, n[1], n[2]);
    for j in 0..k2 {
        d2.set(k1 + j, j, random_laurent(&mut rng, 2, -1, 1, 3));
    }
    let u: Vec<RingMatrix<BigInt>> = n.iter().map(|&k| unimodular_int(&mut rng, k, 4)).collect();
    let lift = |m: &RingMatrix<BigInt>| int_to_laurent(m);
    let d1 = lift(&u[0]).mul(&d1).unwrap().mul(&lift(&int_inverse(&u[1]))).unwrap();
    let d2 = lift(&u[1]).mul(&d2).unwrap().mul(&lift(&int_inverse(&u[2]))).unwrap();
    let basis = n.iter().enumerate().map(|(i, &k)| (0..k).map(|j| format!("g{i}_{j}")).collect()).collect();
    BasedChainComplex::new(1, basis, vec![d1, d2]).unwrap()
}

fn descriptors() -> Vec<RepresentationDescriptor> {
    let xi = CohomologyClass::from_integers(&[1]);
    vec![
        RepresentationDescriptor::Novikov { xi: xi.clone(), cutoff: BigRational::from_integer((-6).into()) },
        RepresentationDescriptor::RationalFnR { xi: xi.clone() },
        RepresentationDescriptor::Scalar { a: q(2, 3), xi: xi.clone() },
        RepresentationDescriptor::RationalField { basis: vec![], characteristic: None },
        RepresentationDescriptor::RationalField { basis: vec![], characteristic: Some(5) },
        RepresentationDescriptor::ScalarWithBundle {
            a: q(-1, 2),
            xi,
            bundle: MonodromyRep::from_integer_matrices(2, &[vec![vec![0, 1], vec![1, 0]]]).unwrap(),
        },
        RepresentationDescriptor::FieldOfFractionsWithBundle { bundle: MonodromyRep::trivial(1), characteristic: None },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn collapse_preserves_homotopy_type(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (b, p) = random_block_complex(&mut rng);
        prop_assert!(b.validate().is_ok());
        let (c, w) = collapse(&b, &p).unwrap();
        prop_assert!(verify_witness(&b, &c, &w).is_ok());
        prop_assert!(c.validate().is_ok());
        prop_assert_eq!(c.euler_characteristic(), b.euler_characteristic());
        prop_assert_eq!(c.homology_over_field(), b.homology_over_field());
    }

    #[test]
    fn base_change_preserves_euler_characteristic(seed in any::<u64>()) {
        let x = random_laurent_complex(seed);
        prop_assert!(x.validate().is_ok());
        for rho in descriptors() {
            let y = base_change(&x, &rho).unwrap();
            prop_assert!(y.validate().is_ok());
            prop_assert_eq!(y.euler_characteristic(), x.euler_characteristic() * rho.block_size() as i64);
        }
    }
}

#[test]
fn fixtures_keep_euler_characteristic_under_base_change() {
    for cs in [fixtures::circle(), fixtures::circle_with_zeros()] {
        let x = build_complex(&cs).unwrap().complex;
        for rho in descriptors() {
            let y = base_change(&x, &rho).unwrap();
            assert_eq!(y.euler_characteristic(), x.euler_characteristic() * rho.block_size() as i64);
        }
    }
}
