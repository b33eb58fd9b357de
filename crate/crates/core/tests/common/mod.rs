#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use novikov_core::group_ring::{CohomologyClass, ExponentVector, GroupRingElement};
use novikov_core::matrix::RingMatrix;
use novikov_core::ring::Ring;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn gr(rank: usize, s: &str) -> GroupRingElement {
    GroupRingElement::parse(rank, s).unwrap()
}

pub fn element_from(rank: usize, terms: Vec<(Vec<i64>, i64)>) -> GroupRingElement {
    GroupRingElement::from_terms(rank, terms.into_iter().map(|(e, c)| (ExponentVector(e), BigInt::from(c)))).unwrap()
}

/// Random elements of Z[Z^rank] with small exponents and coefficients.
pub fn arb_element(rank: usize, max_terms: usize) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, rank), -4i64..=4), 0..=max_terms)
        .prop_map(move |terms| element_from(rank, terms))
}

/// Random xi-negative elements: monomials of nonpositive weight are pushed down by one step of t_1^-1.
pub fn arb_negative(xi: CohomologyClass, max_terms: usize) -> impl Strategy<Value = GroupRingElement> {
    let rank = xi.rank();
    prop::collection::vec((prop::collection::vec(-3i64..=2, rank), -3i64..=3), 0..=max_terms).prop_map(move |terms| {
        let fixed = terms
            .into_iter()
            .map(|(mut e, c)| {
                while xi.weight(&ExponentVector(e.clone())).unwrap() >= BigRational::from_integer(0.into()) {
                    let j = (0..e.len()).find(|&j| xi.weights()[j] > BigRational::from_integer(0.into())).expect("positive weight");
                    e[j] -= 1;
                }
                (e, c)
            })
            .collect();
        element_from(rank, fixed)
    })
}

pub fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

pub fn arb_nonzero_rational() -> impl Strategy<Value = BigRational> {
    arb_rational().prop_filter("nonzero", |x| *x != q(0, 1))
}

pub fn arb_class(rank: usize) -> impl Strategy<Value = CohomologyClass> {
    prop::collection::vec((1i64..=3, 1i64..=2), rank).prop_map(|ws| CohomologyClass::new(ws.into_iter().map(|(n, d)| q(n, d)).collect()))
}

pub fn random_laurent<R: Rng>(rng: &mut R, terms: usize, lo: i64, hi: i64, coef: i64) -> GroupRingElement {
    let ts = (0..terms).map(|_| (vec![rng.gen_range(lo..=hi)], rng.gen_range(-coef..=coef))).collect();
    element_from(1, ts)
}

/// Product of random integer elementary matrices; determinant 1.
pub fn unimodular_int<R: Rng>(rng: &mut R, n: usize, steps: usize) -> RingMatrix<BigInt> {
    let mut m = RingMatrix::<BigInt>::identity((), n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        for c in 0..n {
            let v = m.get(i, c).add(&m.get(j, c).mul(&k));
            m.set(i, c, v);
        }
    }
    m
}

pub fn int_to_laurent(m: &RingMatrix<BigInt>) -> RingMatrix<GroupRingElement> {
    m.map(1, |x| GroupRingElement::constant(1, x.clone()))
}

/// Inverse of an integer matrix with determinant ±1, by exact Gauss-Jordan over Q.
pub fn int_inverse(m: &RingMatrix<BigInt>) -> RingMatrix<BigInt> {
    let qm = m.map((), |x| BigRational::from_integer(x.clone()));
    let inv = novikov_core::matrix::exact_inverse(&qm).unwrap();
    inv.map((), |x| {
        assert!(x.is_integer(), "not unimodular");
        x.to_integer()
    })
}

/// Oracle for units of R: after removing powers of t, content 1 and leading coefficient ±1.
pub fn oracle_r_unit(p: &novikov_core::poly::IntPoly) -> bool {
    use num_traits::{One, Signed};
    let (_, s) = p.strip_t_power();
    !s.is_zero() && s.content().is_one() && s.leading().abs().is_one()
}

/// Oracle for association in R: equal contents and quotient of R-units after cancelling the common factor.
pub fn oracle_r_associated(a: &novikov_core::poly::IntPoly, b: &novikov_core::poly::IntPoly) -> bool {
    use num_traits::Signed;
    let (_, a) = a.strip_t_power();
    let (_, b) = b.strip_t_power();
    if a.content().abs() != b.content().abs() {
        return false;
    }
    let (pa, pb) = (a.primitive_part(), b.primitive_part());
    let g = pa.gcd(&pb).primitive_part();
    oracle_r_unit(&pa.div_exact(&g).unwrap()) && oracle_r_unit(&pb.div_exact(&g).unwrap())
}

/// A random square Laurent matrix U D V with D a diagonal divisibility chain, and the chain itself.
pub struct UdvCase {
    pub matrix: RingMatrix<GroupRingElement>,
    pub chain: Vec<novikov_core::poly::IntPoly>,
}

pub fn udv_case<R: Rng>(rng: &mut R, n: usize) -> UdvCase {
    use novikov_core::poly::{laurent_join, IntPoly};
    let factors: [&[i64]; 9] = [&[1], &[0, 1], &[-3, 1], &[1, 1, 1], &[2], &[1, -2], &[1, 3], &[1, 0, 2], &[3]];
    let mut chain = Vec::with_capacity(n);
    let mut acc = IntPoly::one();
    let zeros = rng.gen_range(0..=1usize.min(n - 1));
    for k in 0..n {
        if k >= n - zeros {
            chain.push(IntPoly::default());
            continue;
        }
        let f = factors[rng.gen_range(0..factors.len())];
        acc = acc.mul(&IntPoly::from_i64(f));
        chain.push(acc.clone());
    }
    let mut m = RingMatrix::<GroupRingElement>::zeros(1, n, n);
    for (k, p) in chain.iter().enumerate() {
        m.set(k, k, laurent_join(0, p));
    }
    let unit_scalars = ["-1", "t", "t^-1", "t - 3", "1 + t + t^2"];
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n.max(2))) % n;
        let left = rng.gen_bool(0.5);
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let c = random_laurent(rng, 2, -1, 1, 2);
                if left {
                    for col in 0..n {
                        let v = m.get(i, col).add(&c.mul(m.get(j, col)));
                        m.set(i, col, v);
                    }
                } else {
                    for row in 0..n {
                        let v = m.get(row, i).add(&c.mul(m.get(row, j)));
                        m.set(row, i, v);
                    }
                }
            }
            _ => {
                let u = gr(1, unit_scalars[rng.gen_range(0..unit_scalars.len())]);
                if left {
                    for col in 0..n {
                        let v = u.mul(m.get(i, col));
                        m.set(i, col, v);
                    }
                } else {
                    for row in 0..n {
                        let v = u.mul(m.get(row, i));
                        m.set(row, i, v);
                    }
                }
            }
        }
    }
    UdvCase { matrix: m, chain }
}

pub type QtFn = novikov_core::tower::RatFn<BigRational>;

pub fn qt_ctx() -> novikov_core::tower::RatFnCtx<()> {
    novikov_core::tower::RatFnCtx::new(1, ())
}

/// Random Laurent polynomial in Q(t) with `terms` monomials.
pub fn random_qt<R: Rng>(rng: &mut R, terms: usize, allow_zero: bool) -> QtFn {
    use novikov_core::mpoly::LaurentMPoly;
    loop {
        let mut p = LaurentMPoly::<BigRational>::zero(1, &());
        for _ in 0..terms {
            let c = q(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            p.add_term(vec![rng.gen_range(-1..=1)], c);
        }
        if allow_zero || !p.is_zero() {
            return novikov_core::tower::RatFn::from_poly(p);
        }
    }
}

/// Random automorphism that keeps the D' coordinates as a direct summand and
/// mixes D with C as `L U`, with L and U unit triangular for an order that
/// puts D before C. The D block of the result is then `L_DD U_DD`, which is
/// invertible, while C still reaches D.
fn random_automorphism<R: Rng>(rng: &mut R, blocks: &[novikov_core::complex::Block]) -> RingMatrix<QtFn> {
    use novikov_core::complex::Block;
    let key = |k: usize| {
        let b = match blocks[k] {
            Block::DPrime => 0,
            Block::D => 1,
            Block::C => 2,
        };
        (b, k)
    };
    let n = blocks.len();
    let ctx = qt_ctx();
    let mut l = RingMatrix::<QtFn>::identity(ctx.clone(), n);
    let mut u = RingMatrix::<QtFn>::identity(ctx, n);
    for i in 0..n {
        for j in 0..n {
            let split = (blocks[i] == Block::DPrime) != (blocks[j] == Block::DPrime);
            if i != j && !split && rng.gen_bool(0.4) {
                let target = if key(i) > key(j) { &mut l } else { &mut u };
                target.set(i, j, random_qt(rng, 1, true));
            }
        }
    }
    l.mul(&u).unwrap()
}

/// A complex over Q(t) that is a direct sum of a core (C blocks, with its own
/// cancelling cones) and contractible pairs D'_i -> D_{i-1}, conjugated by random
/// degree-wise automorphisms.
pub fn random_block_complex<R: Rng>(
    rng: &mut R,
) -> (novikov_core::complex::BasedChainComplex<QtFn>, novikov_core::complex::BlockPartition) {
    use novikov_core::complex::{BasedChainComplex, Block, BlockPartition};
    use rand::seq::SliceRandom;
    let n = rng.gen_range(1..=3usize);
    // (block, partner index in degree below with coefficient) per generator
    let mut gens: Vec<Vec<(Block, String)>> = vec![Vec::new(); n + 1];
    let mut arrows: Vec<(usize, String, String, QtFn)> = Vec::new();
    for i in 0..=n {
        for k in 0..rng.gen_range(0..=2usize) {
            gens[i].push((Block::C, format!("c{i}_{k}")));
        }
    }
    for i in 1..=n {
        for k in 0..rng.gen_range(0..=2usize) {
            let (x, y) = (format!("x{i}_{k}"), format!("y{}_{k}", i - 1));
            gens[i].push((Block::DPrime, x.clone()));
            gens[i - 1].push((Block::D, y.clone()));
            arrows.push((i, x, y, random_qt(rng, 2, false)));
        }
        if rng.gen_bool(0.5) {
            let (u, w) = (format!("u{i}"), format!("w{}", i - 1));
            gens[i].push((Block::C, u.clone()));
            gens[i - 1].push((Block::C, w.clone()));
            arrows.push((i, u, w, random_qt(rng, 2, false)));
        }
    }
    for g in gens.iter_mut() {
        g.truncate(6);
        g.shuffle(rng);
    }
    let ctx = qt_ctx();
    let pos = |i: usize, label: &str| gens[i].iter().position(|(_, l)| l == label);
    let mut ds: Vec<RingMatrix<QtFn>> = (1..=n).map(|i| RingMatrix::zeros(ctx.clone(), gens[i - 1].len(), gens[i].len())).collect();
    for (i, src, dst, c) in &arrows {
        if let (Some(s), Some(t)) = (pos(*i, src), pos(i - 1, dst)) {
            ds[i - 1].set(t, s, c.clone());
        }
    }
    // A truncated pair would break the pairing; drop orphaned D/D' labels into C.
    let mut blocks: Vec<Vec<Block>> = gens.iter().map(|g| g.iter().map(|(b, _)| *b).collect()).collect();
    for (i, src, dst, _) in &arrows {
        let (s, t) = (pos(*i, src), pos(i - 1, dst));
        if s.is_none() || t.is_none() {
            if let Some(s) = s {
                blocks[*i][s] = Block::C;
            }
            if let Some(t) = t {
                blocks[i - 1][t] = Block::C;
            }
        }
    }
    let phis: Vec<RingMatrix<QtFn>> = blocks.iter().map(|b| random_automorphism(rng, b)).collect();
    let conj: Vec<RingMatrix<QtFn>> = (1..=n)
        .map(|i| {
            let inv = novikov_core::matrix::exact_inverse(&phis[i]).unwrap();
            phis[i - 1].mul(&ds[i - 1]).unwrap().mul(&inv).unwrap()
        })
        .collect();
    let basis = gens.iter().map(|g| g.iter().map(|(_, l)| l.clone()).collect()).collect();
    (BasedChainComplex::new(ctx, basis, conj).unwrap(), BlockPartition::new(blocks))
}

/// `C_0 <- C_1 <- C_2` over Z[t, t^-1] with diagonal entries that are
/// products of linear factors `m - n t`, conjugated by integer unimodular matrices.
pub fn split_complex(seed: u64) -> novikov_core::complex::BasedChainComplex<GroupRingElement> {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let n: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
    let k1 = rng.gen_range(0..=n[0].min(n[1]));
    let k2 = rng.gen_range(0..=(n[1] - k1).min(n[2]));
    let linear = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut p = GroupRingElement::one(1);
        for _ in 0..rng.gen_range(0..=2) {
            let m = [1i64, 2, 3, -1, -2][rng.gen_range(0..5)];
            let k = [1i64, 2, 3, -1, -3][rng.gen_range(0..5)];
            p = p.mul(&element_from(1, vec![(vec![0], m), (vec![1], -k)]));
        }
        p
    };
    let mut d1 = RingMatrix::<GroupRingElement>::zeros(1, n[0], n[1]);
    for i in 0..k1 {
        d1.set(i, i, linear(&mut rng));
    }
    let mut d2 = RingMatrix::<GroupRingElement>::zeros(1, n[1], n[2]);
    for j in 0..k2 {
        d2.set(k1 + j, j, linear(&mut rng));
    }
    let u: Vec<RingMatrix<BigInt>> = n.iter().map(|&k| unimodular_int(&mut rng, k, 4)).collect();
    let d1 = int_to_laurent(&u[0]).mul(&d1).unwrap().mul(&int_to_laurent(&int_inverse(&u[1]))).unwrap();
    let d2 = int_to_laurent(&u[1]).mul(&d2).unwrap().mul(&int_to_laurent(&int_inverse(&u[2]))).unwrap();
    let basis = n.iter().enumerate().map(|(i, &k)| (0..k).map(|j| format!("g{i}_{j}")).collect()).collect();
    novikov_core::complex::BasedChainComplex::new(1, basis, vec![d1, d2]).unwrap()
}
