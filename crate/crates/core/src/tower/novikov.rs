//! Truncated Novikov–Sikorav series: an element is an exact representative of
//! a coset modulo all monomials of weight below its cutoff.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::group_ring::{CohomologyClass, GroupRingElement};
use crate::ring::Ring;

/// Class and working cutoff shared by a family of truncated series.
#[derive(Clone, Debug, PartialEq)]
pub struct NovikovCtx {
    pub xi: Arc<CohomologyClass>,
    pub cutoff: BigRational,
}

impl NovikovCtx {
    pub fn new(xi: CohomologyClass, cutoff: BigRational) -> Self {
        NovikovCtx { xi: Arc::new(xi), cutoff }
    }

    pub fn rank(&self) -> usize {
        self.xi.rank()
    }
}

#[derive(Clone)]
pub struct NovikovElement {
    xi: Arc<CohomologyClass>,
    cutoff: BigRational,
    poly: GroupRingElement,
}

impl NovikovElement {
    /// Embeds `p` and discards monomials below the cutoff.
    pub fn from_group_ring(p: &GroupRingElement, ctx: &NovikovCtx) -> Result<Self> {
        ctx.xi.check_rank(p.rank())?;
        Ok(NovikovElement { xi: ctx.xi.clone(), cutoff: ctx.cutoff.clone(), poly: p.truncate_below(&ctx.xi, &ctx.cutoff) })
    }

    pub(crate) fn from_parts(xi: Arc<CohomologyClass>, cutoff: BigRational, poly: GroupRingElement) -> Self {
        let poly = poly.truncate_below(&xi, &cutoff);
        NovikovElement { xi, cutoff, poly }
    }

    pub fn xi(&self) -> &CohomologyClass {
        &self.xi
    }

    pub fn cutoff(&self) -> &BigRational {
        &self.cutoff
    }

    /// Zero above the cutoff.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The stored (known) part.
    pub fn stored(&self) -> &GroupRingElement {
        &self.poly
    }

    pub fn ctx(&self) -> NovikovCtx {
        NovikovCtx { xi: self.xi.clone(), cutoff: self.cutoff.clone() }
    }

    /// Same coset viewed at a coarser cutoff.
    pub fn truncated(&self, cutoff: &BigRational) -> Self {
        let c = cutoff.max(&self.cutoff).clone();
        NovikovElement::from_parts(self.xi.clone(), c, self.poly.clone())
    }

    /// Upper bound for the weights of any representative: the top stored weight,
    /// or the cutoff when nothing above it is known to be nonzero.
    fn top_bound(&self) -> BigRational {
        match self.poly.max_weight(&self.xi) {
            Some(w) if w > self.cutoff => w,
            _ => self.cutoff.clone(),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.xi != other.xi {
            return Err(AlgebraError::Dimension("Novikov elements over different classes".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul(other))
    }

    /// Cutoff below which the product of `self` and `other` is unknown.
    fn product_cutoff(&self, other: &Self) -> BigRational {
        let a = &self.cutoff + other.top_bound();
        let b = &other.cutoff + self.top_bound();
        [self.cutoff.clone(), other.cutoff.clone(), a, b].into_iter().max().expect("nonempty")
    }
}

impl PartialEq for NovikovElement {
    /// Coset equality at the coarser of the two cutoffs.
    fn eq(&self, other: &Self) -> bool {
        if self.xi != other.xi {
            return false;
        }
        let c = self.cutoff.clone().max(other.cutoff.clone());
        self.poly.truncate_below(&self.xi, &c) == other.poly.truncate_below(&self.xi, &c)
    }
}

impl fmt::Debug for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.poly, self.cutoff)
    }
}

impl Ring for NovikovElement {
    type Ctx = NovikovCtx;

    fn zero_in(ctx: &NovikovCtx) -> Self {
        NovikovElement { xi: ctx.xi.clone(), cutoff: ctx.cutoff.clone(), poly: GroupRingElement::zero(ctx.rank()) }
    }

    fn one_in(ctx: &NovikovCtx) -> Self {
        Self::from_int(&BigInt::from(1), ctx)
    }

    fn from_int(n: &BigInt, ctx: &NovikovCtx) -> Self {
        NovikovElement::from_parts(ctx.xi.clone(), ctx.cutoff.clone(), GroupRingElement::constant(ctx.rank(), n.clone()))
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let c = self.cutoff.clone().max(rhs.cutoff.clone());
        NovikovElement::from_parts(self.xi.clone(), c, self.poly.add(&rhs.poly))
    }

    fn mul(&self, rhs: &Self) -> Self {
        let c = self.product_cutoff(rhs);
        let poly = self.poly.mul_truncated(&rhs.poly, &self.xi, &c);
        NovikovElement { xi: self.xi.clone(), cutoff: c, poly }
    }

    fn neg(&self) -> Self {
        NovikovElement { xi: self.xi.clone(), cutoff: self.cutoff.clone(), poly: self.poly.negated() }
    }

    /// Inverts elements whose top weight level is a single term ±h: then
    /// `self = ±h(1 + n)` with n negative, and the inverse is a geometric series.
    fn try_inverse(&self) -> Option<Self> {
        let w = self.poly.max_weight(&self.xi)?;
        let top: Vec<_> = self.poly.terms().filter(|(e, _)| self.xi.weight_unchecked(e) == w).collect();
        if top.len() != 1 {
            return None;
        }
        let (h, c) = top[0];
        let unit = c.try_inverse()?;
        let lead = GroupRingElement::monomial(h.negated(), unit);
        let normalized = self.poly.mul(&lead);
        let n = normalized.sub(&GroupRingElement::one(self.poly.rank()));
        let target = &self.cutoff - &w - &w;
        let series_cutoff = &target + &w;
        let minus_n = n.negated();
        let mut term = GroupRingElement::one(self.poly.rank());
        let mut sum = term.clone();
        loop {
            term = term.mul_truncated(&minus_n, &self.xi, &series_cutoff);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        Some(NovikovElement::from_parts(self.xi.clone(), target, sum.mul(&lead)))
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// rho_novikov: identity embedding followed by truncation.
pub fn rho_novikov(p: &GroupRingElement, xi: &CohomologyClass, cutoff: &BigRational) -> Result<NovikovElement> {
    NovikovElement::from_group_ring(p, &NovikovCtx::new(xi.clone(), cutoff.clone()))
}

/// True when every stored term of `p` has weight at most zero and the weight-zero
/// part is exactly `±h`; the shape required of pivots in Novikov inversion.
pub(crate) fn unit_plus_negative(p: &GroupRingElement, xi: &CohomologyClass) -> Option<GroupRingElement> {
    let mut lead = GroupRingElement::zero(p.rank());
    for (e, c) in p.terms() {
        let w = xi.weight_unchecked(e);
        if w.is_positive() {
            return None;
        }
        if w.is_zero() {
            lead = lead.add(&GroupRingElement::monomial(e.clone(), c.clone()));
        }
    }
    if lead.num_terms() == 1 && lead.terms().all(|(_, c)| c.abs() == BigInt::from(1)) {
        Some(lead)
    } else {
        None
    }
}
