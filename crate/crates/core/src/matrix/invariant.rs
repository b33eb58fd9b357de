//! Ranks over fraction fields (fraction-free elimination) and invariant
//! factors over R via determinantal divisors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldRank, RingMatrix};
use crate::error::{AlgebraError, Result};
use crate::group_ring::GroupRingElement;
use crate::mpoly::LaurentMPoly;
use crate::poly::{laurent_split, IntPoly};
use crate::ring::CoeffField;
use crate::tower::ratfield::RatFn;

/// Largest matrix dimension accepted by minor enumeration.
pub const MAX_INVARIANT_FACTOR_SIZE: usize = 12;

/// Rank of a matrix of Laurent polynomials by Bareiss elimination. Pivots are
/// chosen as the first nonzero entry in row-major order of the active block.
fn bareiss_rank<F: CoeffField>(mut a: Vec<Vec<LaurentMPoly<F>>>, nvars: usize, ctx: &F::Ctx) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = LaurentMPoly::one(nvars, ctx);
    let mut k = 0;
    while k < rows.min(cols) {
        let mut pivot = None;
        'search: for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if !x.is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let piv = a[k][k].clone();
        for i in k + 1..rows {
            let aik = a[i][k].clone();
            for j in k + 1..cols {
                let num = piv.mul(&a[i][j]).sub(&aik.mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentMPoly::zero(nvars, ctx);
        }
        prev = piv;
        k += 1;
    }
    k
}

/// Rank over the fraction field of Z[H] (computed over Q(t_1..t_r)).
pub fn rank_over_fraction_field(m: &RingMatrix<GroupRingElement>) -> usize {
    let nvars = *m.ctx();
    let rows = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| {
                    let mut q = LaurentMPoly::<BigRational>::zero(nvars, &());
                    for (e, c) in p.terms() {
                        q.add_term(e.0.clone(), BigRational::from_integer(c.clone()));
                    }
                    q
                })
                .collect()
        })
        .collect();
    bareiss_rank(rows, nvars, &())
}

impl<F: CoeffField> FieldRank for RatFn<F> {
    /// Clears denominators row by row, then runs fraction-free elimination.
    fn matrix_rank(m: &RingMatrix<Self>) -> usize {
        let nvars = m.ctx().nvars;
        let ctx = &m.ctx().field;
        let rows = (0..m.rows())
            .map(|i| {
                let row = m.row(i);
                let mut common = LaurentMPoly::one(nvars, ctx);
                for x in row {
                    if common.div_exact(x.denominator()).is_none() {
                        common = common.mul(x.denominator());
                    }
                }
                row.iter()
                    .map(|x| x.numerator().mul(&common).div_exact(x.denominator()).expect("common multiple"))
                    .collect()
            })
            .collect();
        bareiss_rank(rows, nvars, ctx)
    }
}

/// The classes of invariant factors of a matrix over R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactorProfile {
    pub rank: usize,
    pub unit_count: usize,
    /// Integer-polynomial representatives of the non-unit invariant factors, in chain order.
    pub torsion_factors: Vec<IntPoly>,
}

fn is_r_unit_poly(p: &IntPoly) -> bool {
    !p.is_zero() && p.content().is_one() && p.leading().abs().is_one()
}

/// True iff a/b is a unit of R, i.e. a and b generate the same ideal.
pub fn r_associated(a: &IntPoly, b: &IntPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (_, a) = a.strip_t_power();
    let (_, b) = b.strip_t_power();
    let g = a.gcd(&b);
    match (a.div_exact(&g), b.div_exact(&g)) {
        (Some(x), Some(y)) => is_r_unit_poly(&x) && is_r_unit_poly(&y),
        _ => false,
    }
}

/// Representative of the class of `p` modulo R-units: the content alone when
/// the primitive part is a unit, otherwise `p` with positive leading coefficient.
fn class_representative(p: &IntPoly) -> IntPoly {
    let (_, p) = p.strip_t_power();
    let prim = p.primitive_part();
    if is_r_unit_poly(&prim) {
        IntPoly::constant(p.content())
    } else {
        p.normalized_sign()
    }
}

fn is_plus_minus_one(p: &IntPoly) -> bool {
    p.degree() == Some(0) && p.leading().abs().is_one()
}

pub(crate) fn int_det(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    let mut prev = IntPoly::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return IntPoly::default();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    prev.scale(&sign)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Shifts the whole matrix by a power of t (a unit of R) so that all entries are polynomials.
pub(crate) fn polynomial_entries(m: &RingMatrix<GroupRingElement>) -> Result<Vec<Vec<IntPoly>>> {
    if *m.ctx() != 1 {
        return Err(AlgebraError::Dimension(format!("invariant factors need one variable, got {}", m.ctx())));
    }
    let low = m.entries().filter(|p| !p.is_zero()).map(|p| laurent_split(p).0).min().unwrap_or(0);
    Ok((0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| {
                    if p.is_zero() {
                        return IntPoly::default();
                    }
                    let (s, q) = laurent_split(p);
                    let mut coeffs = vec![BigInt::zero(); (s - low) as usize];
                    coeffs.extend(q.coeffs().iter().cloned());
                    IntPoly::new(coeffs)
                })
                .collect()
        })
        .collect())
}

/// Delta_0 = 1, ..., Delta_rank: gcds over Z[t] of the k x k minors, with
/// powers of t removed.
pub fn determinantal_divisors(m: &RingMatrix<GroupRingElement>) -> Result<Vec<IntPoly>> {
    if m.rows() > MAX_INVARIANT_FACTOR_SIZE || m.cols() > MAX_INVARIANT_FACTOR_SIZE {
        return Err(AlgebraError::SizeLimit(format!(
            "{}x{} exceeds the {MAX_INVARIANT_FACTOR_SIZE}x{MAX_INVARIANT_FACTOR_SIZE} minor-enumeration cap",
            m.rows(),
            m.cols()
        )));
    }
    let entries = polynomial_entries(m)?;
    let rank = rank_over_fraction_field(m);
    let mut out = vec![IntPoly::one()];
    for k in 1..=rank {
        let mut g = IntPoly::default();
        'outer: for rs in combinations(m.rows(), k) {
            for cs in combinations(m.cols(), k) {
                let sub = rs.iter().map(|&i| cs.iter().map(|&j| entries[i][j].clone()).collect()).collect();
                let d = int_det(sub);
                if d.is_zero() {
                    continue;
                }
                g = g.gcd(&d);
                if is_plus_minus_one(&g) {
                    break 'outer;
                }
            }
        }
        let (_, g) = g.strip_t_power();
        let g = g.normalized_sign();
        if g.is_zero() {
            return Err(AlgebraError::InvariantViolation(format!("all {k}-minors vanish below the rank")));
        }
        if !out[k - 1].divides(&g) {
            return Err(AlgebraError::InvariantViolation(format!(
                "Delta_{} = {} does not divide Delta_{k} = {g}",
                k - 1,
                out[k - 1]
            )));
        }
        out.push(g);
    }
    Ok(out)
}

/// Primitive gcd over Q[t] of the k x k minors, without powers of t. Stops
/// early once the gcd is constant; no size cap.
pub fn minor_gcd_up_to_constants(m: &RingMatrix<GroupRingElement>, k: usize) -> Result<IntPoly> {
    if k == 0 {
        return Ok(IntPoly::one());
    }
    let entries = polynomial_entries(m)?;
    let mut g = IntPoly::default();
    for rs in combinations(m.rows(), k) {
        for cs in combinations(m.cols(), k) {
            let sub = rs.iter().map(|&i| cs.iter().map(|&j| entries[i][j].clone()).collect()).collect();
            let d = int_det(sub);
            if d.is_zero() {
                continue;
            }
            g = g.gcd(&d.strip_t_power().1);
            if g.degree() == Some(0) {
                return Ok(IntPoly::one());
            }
        }
    }
    if g.is_zero() {
        return Err(AlgebraError::InvariantViolation(format!("all {k}-minors vanish")));
    }
    Ok(g.strip_t_power().1.primitive_part().normalized_sign())
}

/// Invariant factors over R of a one-variable Laurent matrix.
pub fn invariant_factors_over_r(m: &RingMatrix<GroupRingElement>) -> Result<InvariantFactorProfile> {
    let deltas = determinantal_divisors(m)?;
    let rank = deltas.len() - 1;
    let mut unit_count = 0;
    let mut torsion_factors = Vec::new();
    for k in 1..=rank {
        let d = deltas[k].div_exact(&deltas[k - 1]).expect("checked divisibility");
        if is_r_unit_poly(&d) {
            unit_count += 1;
        } else {
            torsion_factors.push(class_representative(&d));
        }
    }
    Ok(InvariantFactorProfile { rank, unit_count, torsion_factors })
}
