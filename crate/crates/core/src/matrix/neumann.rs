//! Inversion of I + A for xi-negative A by truncated geometric series.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use super::{MatrixInverse, RingMatrix};
use crate::error::{AlgebraError, Result};
use crate::group_ring::{is_xi_negative_matrix, CohomologyClass, GroupRingElement};
use crate::ring::Ring;
use crate::tower::novikov::{unit_plus_negative, NovikovCtx, NovikovElement};

fn mul_truncated(
    a: &RingMatrix<GroupRingElement>,
    b: &RingMatrix<GroupRingElement>,
    xi: &CohomologyClass,
    cutoff: &BigRational,
) -> RingMatrix<GroupRingElement> {
    let n = a.rows();
    let mut out = RingMatrix::zeros(*a.ctx(), n, b.cols());
    for i in 0..n {
        for j in 0..b.cols() {
            let mut acc = GroupRingElement::zero(*a.ctx());
            for k in 0..a.cols() {
                let (x, y) = (a.get(i, k), b.get(k, j));
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul_truncated(y, xi, cutoff));
                }
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Number of series terms needed: ceil(-cutoff / lambda), never negative.
fn series_length(cutoff: &BigRational, lambda: &BigRational) -> u64 {
    let k = (-cutoff / lambda).ceil().to_integer();
    if k.is_negative() {
        0
    } else {
        u64::try_from(k).unwrap_or(u64::MAX)
    }
}

/// (I + A)^-1 = sum_{k=0}^K (-A)^k, truncated at `cutoff`.
pub fn neumann_inverse(
    a: &RingMatrix<GroupRingElement>,
    xi: &CohomologyClass,
    cutoff: &BigRational,
) -> Result<RingMatrix<NovikovElement>> {
    if !a.is_square() {
        return Err(AlgebraError::Shape(format!("Neumann inverse of a {}x{} matrix", a.rows(), a.cols())));
    }
    if !is_xi_negative_matrix(xi, a)? {
        return Err(AlgebraError::Precondition("matrix is not xi-negative".into()));
    }
    let n = a.rows();
    let rank = *a.ctx();
    let ctx = NovikovCtx::new(xi.clone(), cutoff.clone());
    let top = a.entries().filter_map(|e| e.max_weight(xi)).max();
    let mut sum = RingMatrix::<GroupRingElement>::identity(rank, n);
    if let Some(top) = top {
        let lambda = -top;
        let k_max = series_length(cutoff, &lambda);
        let minus_a = a.neg();
        let mut term = sum.clone();
        for _ in 0..k_max {
            term = mul_truncated(&term, &minus_a, xi, cutoff);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
        }
    }
    sum.try_map(ctx.clone(), |p| NovikovElement::from_group_ring(p, &ctx))
}

/// Inverts M = P + N over truncated series, where P is a signed monomial
/// permutation matrix of weight zero and N is xi-negative. Any other shape is
/// rejected.
pub fn signed_permutation_plus_negative_inverse(m: &RingMatrix<NovikovElement>) -> Result<RingMatrix<NovikovElement>> {
    if !m.is_square() {
        return Err(AlgebraError::Shape(format!("inverse of a {}x{} matrix", m.rows(), m.cols())));
    }
    let ctx = m.ctx().clone();
    let xi = ctx.xi.clone();
    let n = m.rows();
    let rank = ctx.rank();
    let cutoff = m.entries().map(|e| e.cutoff().clone()).fold(ctx.cutoff.clone(), |a, b| a.max(b));
    let mut p_inv = RingMatrix::<GroupRingElement>::zeros(rank, n, n);
    let mut lead_of_row: Vec<Option<usize>> = vec![None; n];
    let mut leads = Vec::with_capacity(n);
    for j in 0..n {
        let mut found = None;
        for i in 0..n {
            let e = m.get(i, j).stored();
            if e.is_zero() || e.max_weight(&xi).is_some_and(|w| w.is_negative()) {
                continue;
            }
            let Some(lead) = unit_plus_negative(e, &xi) else {
                return Err(AlgebraError::Representation(format!(
                    "entry ({i},{j}) = {e} is not a signed monomial plus xi-negative terms"
                )));
            };
            if found.is_some() || lead_of_row[i].is_some() {
                return Err(AlgebraError::Representation(format!(
                    "weight-zero part is not a signed permutation matrix (column {j})"
                )));
            }
            found = Some(i);
            lead_of_row[i] = Some(j);
            leads.push((i, j, lead));
        }
        if found.is_none() {
            return Err(AlgebraError::Representation(format!("column {j} has no weight-zero unit")));
        }
    }
    for (i, j, lead) in leads {
        p_inv.set(j, i, lead.try_inverse().expect("signed monomial"));
    }
    let stored = m.map(rank, |e| e.stored().clone());
    let normalized = mul_truncated(&p_inv, &stored, &xi, &cutoff);
    let a = normalized.sub(&RingMatrix::identity(rank, n))?;
    let inv = neumann_inverse(&a, &xi, &cutoff)?;
    let p_nov = p_inv.try_map(NovikovCtx { xi: xi.clone(), cutoff: cutoff.clone() }, |p| {
        NovikovElement::from_group_ring(p, &NovikovCtx { xi: Arc::clone(&xi), cutoff: cutoff.clone() })
    })?;
    inv.mul(&p_nov)
}

/// Inverse of a Novikov matrix, requiring the unit-plus-negative shape.
pub fn neumann_inverse_novikov(m: &RingMatrix<NovikovElement>) -> Result<RingMatrix<NovikovElement>> {
    signed_permutation_plus_negative_inverse(m)
}

impl MatrixInverse for NovikovElement {
    fn invert_matrix(m: &RingMatrix<Self>) -> Result<RingMatrix<Self>> {
        signed_permutation_plus_negative_inverse(m)
    }
}
