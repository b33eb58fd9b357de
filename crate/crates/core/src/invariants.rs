//! Novikov numbers, Novikov-type inequalities, twisted homology, jump
//! polynomials, genericity of flat bundles, and the algebraic mapping torus.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::{base_change, BasedChainComplex, TowerComplex};
use crate::error::{AlgebraError, Result};
use crate::group_ring::{CohomologyClass, ExponentVector, GroupRingElement};
use crate::matrix::{invariant_factors_over_r, minor_gcd_up_to_constants, rank_over_fraction_field, RingMatrix};
use crate::poly::{laurent_join, IntPoly};
use crate::ring::{Fp, Ring};
use crate::tower::{rho_bundle_at_one, MonodromyRep, RationalFnR, RepField, RepresentationDescriptor};

/// Free and torsion Novikov numbers per degree; `q` is absent for non-integral classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NovikovNumbers {
    pub b: Vec<usize>,
    pub q: Option<Vec<usize>>,
}

fn require_one_variable(x: &BasedChainComplex<GroupRingElement>) -> Result<()> {
    if *x.ctx() != 1 {
        return Err(AlgebraError::Dimension(format!("expected a one-variable complex, got rank {}", x.ctx())));
    }
    Ok(())
}

fn betti_from_ranks(counts: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..counts.len())
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            counts[i] - out - ranks.get(i).copied().unwrap_or(0)
        })
        .collect()
}

/// `b_i` from ranks over Q(t) and `q_i` from the non-unit invariant factors of
/// `d_{i+1}` over R.
pub fn novikov_numbers(x: &BasedChainComplex<GroupRingElement>) -> Result<NovikovNumbers> {
    require_one_variable(x)?;
    let ranks: Vec<usize> = x.differentials().iter().map(rank_over_fraction_field).collect();
    let b = betti_from_ranks(&x.basis_counts(), &ranks);
    let mut q = vec![0; b.len()];
    for (i, d) in x.differentials().iter().enumerate() {
        q[i] = invariant_factors_over_r(d)?.torsion_factors.len();
    }
    Ok(NovikovNumbers { b, q: Some(q) })
}

/// Pushes a complex over Z[H] to Z[t, t^-1] along `h -> t^xi(h)`; xi must be integral.
pub fn push_forward(x: &BasedChainComplex<GroupRingElement>, xi: &CohomologyClass) -> Result<BasedChainComplex<GroupRingElement>> {
    xi.check_rank(*x.ctx())?;
    let w = xi.integer_weights()?;
    x.map_entries(1, |p| Ok(p.map_exponents(1, |e| ExponentVector(vec![e.0.iter().zip(&w).map(|(a, b)| a * b).sum()]))))
}

/// Novikov numbers of a complex over Z[H] for a class xi. A rational class is
/// rescaled to an integral one for `b`; `q` is only reported for integral classes.
pub fn novikov_numbers_for_class(x: &BasedChainComplex<GroupRingElement>, xi: &CohomologyClass) -> Result<NovikovNumbers> {
    xi.check_rank(*x.ctx())?;
    if xi.is_integral() {
        return novikov_numbers(&push_forward(x, xi)?);
    }
    let lcm = xi.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled = CohomologyClass::new(xi.weights().iter().map(|w| w * BigRational::from_integer(lcm.clone())).collect());
    let pushed = push_forward(x, &scaled)?;
    let ranks: Vec<usize> = pushed.differentials().iter().map(rank_over_fraction_field).collect();
    Ok(NovikovNumbers { b: betti_from_ranks(&pushed.basis_counts(), &ranks), q: None })
}

/// Clears the monic denominators of a matrix over R column by column; the
/// scalings are units of R, so ranks and invariant factors are unchanged.
pub fn clear_r_denominators(m: &RingMatrix<RationalFnR>) -> RingMatrix<GroupRingElement> {
    let mut out = RingMatrix::<GroupRingElement>::zeros(1, m.rows(), m.cols());
    for j in 0..m.cols() {
        let dens: Vec<IntPoly> = (0..m.rows()).map(|i| m.get(i, j).denominator().clone()).collect();
        for i in 0..m.rows() {
            let others = dens.iter().enumerate().filter(|(k, _)| *k != i).fold(IntPoly::one(), |acc, (_, d)| acc.mul(d));
            out.set(i, j, m.get(i, j).numerator().mul(&laurent_join(0, &others)));
        }
    }
    out
}

/// Novikov numbers of a complex over R, e.g. the outcome of a cascade.
pub fn novikov_numbers_over_r(x: &BasedChainComplex<RationalFnR>) -> Result<NovikovNumbers> {
    let ds = x.differentials().iter().map(clear_r_denominators).collect();
    novikov_numbers(&BasedChainComplex::new(1, x.basis().to_vec(), ds)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotComputed,
}

/// `c_j >= b_j + q_j + q_{j-1}` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NovikovInequality {
    pub degree: usize,
    pub c: usize,
    pub bound: Option<usize>,
    pub slack: Option<i64>,
    pub verdict: Verdict,
}

/// Evaluates the Novikov inequalities with `q_{-1} = 0`.
pub fn check_novikov_inequalities(c: &[usize], numbers: &NovikovNumbers) -> Vec<NovikovInequality> {
    let n = c.len().max(numbers.b.len());
    (0..n)
        .map(|j| {
            let cj = c.get(j).copied().unwrap_or(0);
            let bound = numbers.q.as_ref().map(|q| {
                let qj = q.get(j).copied().unwrap_or(0);
                let prev = if j == 0 { 0 } else { q.get(j - 1).copied().unwrap_or(0) };
                numbers.b.get(j).copied().unwrap_or(0) + qj + prev
            });
            let slack = bound.map(|b| cj as i64 - b as i64);
            let verdict = match slack {
                None => Verdict::NotComputed,
                Some(s) if s >= 0 => Verdict::Pass,
                Some(_) => Verdict::Fail,
            };
            NovikovInequality { degree: j, c: cj, bound, slack, verdict }
        })
        .collect()
}

/// The single and alternating Morse-type bounds in degree p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseInequality {
    pub degree: usize,
    /// `c_p - dims_p / dim E`.
    pub single_slack: BigRational,
    /// `sum_j (-1)^j (c_{p-j} - dims_{p-j} / dim E)`.
    pub alternating_slack: BigRational,
    pub verdict: Verdict,
}

/// Checks `c_p >= dims_p / dim E` and the alternating partial sums.
pub fn morse_type_inequalities(c: &[usize], dims: &[usize], dim_e: usize) -> Result<Vec<MorseInequality>> {
    if dim_e == 0 {
        return Err(AlgebraError::Precondition("bundle dimension must be at least 1".into()));
    }
    let n = c.len().max(dims.len());
    let m = BigRational::from_integer(dim_e.into());
    let diff = |p: usize| {
        BigRational::from_integer(c.get(p).copied().unwrap_or(0).into())
            - BigRational::from_integer(dims.get(p).copied().unwrap_or(0).into()) / &m
    };
    let mut out = Vec::with_capacity(n);
    for p in 0..n {
        let single = diff(p);
        let mut alt = BigRational::zero();
        for j in 0..=p {
            let term = diff(p - j);
            if j % 2 == 0 {
                alt += term;
            } else {
                alt -= term;
            }
        }
        let verdict = if single.is_negative() || alt.is_negative() { Verdict::Fail } else { Verdict::Pass };
        out.push(MorseInequality { degree: p, single_slack: single, alternating_slack: alt, verdict });
    }
    Ok(out)
}

/// `dim H_p(C; a^xi tensor E)` over Q.
pub fn bundle_homology_dims(
    x: &BasedChainComplex<GroupRingElement>,
    a: &BigRational,
    e: &MonodromyRep,
    xi: &CohomologyClass,
) -> Result<Vec<usize>> {
    let rho = RepresentationDescriptor::ScalarWithBundle { a: a.clone(), xi: xi.clone(), bundle: e.clone() };
    match base_change(x, &rho)? {
        TowerComplex::Rational(c) => Ok(c.homology_over_field()),
        other => unreachable!("scalar twist produced {}", other.ring_name()),
    }
}

/// One-variable integer matrix for `h -> t^xi(h) E(h)`, scaled by a positive
/// integer to clear denominators (which changes no rank at any point).
fn twisted_laurent_matrix(d: &RingMatrix<GroupRingElement>, e: &MonodromyRep, w: &[i64]) -> RingMatrix<GroupRingElement> {
    let m = e.dim();
    let mut images: HashMap<ExponentVector, RingMatrix<BigRational>> = HashMap::new();
    let mut cells: Vec<BTreeMap<i64, BigRational>> = vec![BTreeMap::new(); d.rows() * m * d.cols() * m];
    let width = d.cols() * m;
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            for (h, c) in d.get(i, j).terms() {
                let k: i64 = h.0.iter().zip(w).map(|(a, b)| a * b).sum();
                let img = images.entry(h.clone()).or_insert_with(|| e.image(h));
                let c = BigRational::from_integer(c.clone());
                for a in 0..m {
                    for b in 0..m {
                        let v = img.get(a, b);
                        if v.is_zero() {
                            continue;
                        }
                        *cells[(i * m + a) * width + j * m + b].entry(k).or_insert_with(BigRational::zero) += v * &c;
                    }
                }
            }
        }
    }
    let lcm = cells.iter().flat_map(|c| c.values()).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = BigRational::from_integer(lcm);
    let data = cells
        .into_iter()
        .map(|cell| {
            let terms = cell
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (ExponentVector(vec![k]), (v * &scale).to_integer()));
            GroupRingElement::from_terms(1, terms).expect("rank 1 terms")
        })
        .collect();
    RingMatrix::new(1, d.rows() * m, width, data).expect("shape")
}

/// The complex over Z[t, t^-1] whose specialization at `t = a` is the
/// `a^xi tensor E` twist.
pub fn twisted_complex(
    x: &BasedChainComplex<GroupRingElement>,
    e: &MonodromyRep,
    xi: &CohomologyClass,
) -> Result<BasedChainComplex<GroupRingElement>> {
    xi.check_rank(*x.ctx())?;
    e.check_rank(*x.ctx())?;
    let w = xi.integer_weights()?;
    let one_var = x.map_blocks(1, e.dim(), |_| Ok(RingMatrix::<GroupRingElement>::zeros(1, e.dim(), e.dim())))?;
    let ds = x.differentials().iter().map(|d| twisted_laurent_matrix(d, e, &w)).collect();
    BasedChainComplex::new(1, one_var.basis().to_vec(), ds)
}

/// Generic twisted Betti numbers and, per degree, the squarefree integer
/// polynomial whose roots are the jump points (`None` when there are none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpReport {
    pub generic_betti: Vec<usize>,
    pub jump_polynomials: Vec<Option<IntPoly>>,
}

/// For each degree, `dim H_i` at `t = a` exceeds the generic value exactly
/// when `a` is a root of the gcd of the generic-rank minors of `d_i` or `d_{i+1}`.
pub fn generic_betti_and_jumps(
    x: &BasedChainComplex<GroupRingElement>,
    e: &MonodromyRep,
    xi: &CohomologyClass,
) -> Result<JumpReport> {
    let tw = twisted_complex(x, e, xi)?;
    let ranks: Vec<usize> = tw.differentials().iter().map(rank_over_fraction_field).collect();
    let generic_betti = betti_from_ranks(&tw.basis_counts(), &ranks);
    let gcds = tw
        .differentials()
        .iter()
        .zip(&ranks)
        .map(|(d, &k)| minor_gcd_up_to_constants(d, k))
        .collect::<Result<Vec<_>>>()?;
    let jump_polynomials = (0..generic_betti.len())
        .map(|i| {
            let below = if i == 0 { IntPoly::one() } else { gcds[i - 1].clone() };
            let above = gcds.get(i).cloned().unwrap_or_else(IntPoly::one);
            let p = below.mul(&above).squarefree_part().normalized_sign();
            (p.degree().unwrap_or(0) > 0).then_some(p)
        })
        .collect();
    Ok(JumpReport { generic_betti, jump_polynomials })
}

/// Homology dimensions over k(H) with the bundle twist and over k at the
/// trivial line bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub generic_dims: Vec<usize>,
    pub trivial_dims: Vec<usize>,
    pub xi_generic: bool,
}

fn trivial_dims<F: RepField + crate::matrix::FieldRank>(
    x: &BasedChainComplex<GroupRingElement>,
    e: &MonodromyRep,
    characteristic: Option<u64>,
) -> Result<Vec<usize>> {
    let ctx = F::field_ctx(characteristic)?;
    Ok(x.map_blocks(ctx.clone(), e.dim(), |p| rho_bundle_at_one::<F>(p, e, &ctx))?.homology_over_field())
}

/// Compares homology over k(H) tensor E with homology at the trivial line bundle.
pub fn is_xi_generic(
    x: &BasedChainComplex<GroupRingElement>,
    e: &MonodromyRep,
    characteristic: Option<u64>,
) -> Result<GenericityReport> {
    let rho = RepresentationDescriptor::FieldOfFractionsWithBundle { bundle: e.clone(), characteristic };
    let generic_dims = base_change(x, &rho)?.homology_over_field().expect("field coefficients");
    let trivial_dims = match characteristic {
        None | Some(0) => trivial_dims::<BigRational>(x, e, None)?,
        Some(_) => trivial_dims::<Fp>(x, e, characteristic)?,
    };
    let xi_generic = generic_dims == trivial_dims;
    Ok(GenericityReport { generic_dims, trivial_dims, xi_generic })
}

/// Algebraic mapping torus of a chain self-map h of an integer complex: the
/// cone of `1 - t h` over Z[t, t^-1]. Degree i is `C_i + C_{i-1}` and the
/// differential is `[[d, 1 - t h], [0, -d]]`. At `t = a` the twisted homology
/// jumps when `1/a` is an eigenvalue of h.
pub fn mapping_torus(c: &BasedChainComplex<BigInt>, h: &[RingMatrix<BigInt>]) -> Result<BasedChainComplex<GroupRingElement>> {
    let counts = c.basis_counts();
    if h.len() != counts.len() {
        return Err(AlgebraError::Shape(format!("chain map has {} components for {} degrees", h.len(), counts.len())));
    }
    for (i, hi) in h.iter().enumerate() {
        if hi.rows() != counts[i] || hi.cols() != counts[i] {
            return Err(AlgebraError::Shape(format!("h_{i} is {}x{}, expected {}x{}", hi.rows(), hi.cols(), counts[i], counts[i])));
        }
    }
    for i in 1..counts.len() {
        let d = &c.differentials()[i - 1];
        if d.mul(&h[i])? != h[i - 1].mul(d)? {
            return Err(AlgebraError::Precondition(format!("h is not a chain map: d_{i} h_{i} != h_{} d_{i}", i - 1)));
        }
    }
    let n = counts.len();
    let lift = |k: &BigInt| GroupRingElement::constant(1, k.clone());
    let t = GroupRingElement::monomial(ExponentVector(vec![1]), BigInt::one());
    let basis: Vec<Vec<String>> = (0..=n)
        .map(|i| {
            let mut b: Vec<String> = c.basis().get(i).cloned().unwrap_or_default();
            if i >= 1 {
                b.extend(c.basis()[i - 1].iter().map(|l| format!("s({l})")));
            }
            b
        })
        .collect();
    let size = |i: usize| counts.get(i).copied().unwrap_or(0) + if i >= 1 { counts[i - 1] } else { 0 };
    let mut ds = Vec::with_capacity(n);
    for i in 1..=n {
        let mut d = RingMatrix::<GroupRingElement>::zeros(1, size(i - 1), size(i));
        let top = counts.get(i).copied().unwrap_or(0);
        let low = counts[i - 1];
        if i < n {
            let di = &c.differentials()[i - 1];
            for r in 0..low {
                for s in 0..top {
                    d.set(r, s, lift(di.get(r, s)));
                }
            }
        }
        let hi = &h[i - 1];
        for r in 0..low {
            for s in 0..low {
                let mut v = lift(hi.get(r, s)).mul(&t).neg();
                if r == s {
                    v = v.add(&GroupRingElement::one(1));
                }
                d.set(r, top + s, v);
            }
        }
        if i >= 2 {
            let dm = &c.differentials()[i - 2];
            for r in 0..counts[i - 2] {
                for s in 0..low {
                    d.set(low + r, top + s, lift(dm.get(r, s)).neg());
                }
            }
        }
        ds.push(d);
    }
    let torus = BasedChainComplex::new(1, basis, ds)?;
    if let Err(v) = torus.validate() {
        return Err(AlgebraError::InvariantViolation(format!("mapping torus: {v}")));
    }
    Ok(torus)
}

/// Euler characteristic of any based complex.
pub fn euler_characteristic<R: Ring>(x: &BasedChainComplex<R>) -> i64 {
    x.euler_characteristic()
}
