//! The ring R of rational functions p(t)/q(t) with p a Laurent polynomial over Z
//! and q an integer polynomial with top coefficient 1.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::group_ring::{CohomologyClass, ExponentVector, GroupRingElement};
use crate::mpoly::LaurentMPoly;
use crate::poly::{laurent_join, laurent_split, IntPoly, UPoly};
use crate::ring::Ring;
use crate::tower::ratfield::RatFn;

#[derive(Clone)]
pub struct RationalFnR {
    num: GroupRingElement,
    den: IntPoly,
}

impl RationalFnR {
    /// `num / den` with `den` monic; anything else is rejected.
    pub fn new(num: GroupRingElement, den: IntPoly) -> Result<Self> {
        if num.rank() != 1 {
            return Err(AlgebraError::Dimension(format!("numerator of rank {}; R is one-variable", num.rank())));
        }
        if den.is_zero() || !den.leading().is_one() {
            return Err(AlgebraError::Precondition(format!("denominator {den} is not monic")));
        }
        Ok(RationalFnR { num, den })
    }

    pub fn from_laurent(num: GroupRingElement) -> Result<Self> {
        Self::new(num, IntPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &GroupRingElement {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    /// Unit test of R: writing the numerator as ±t^k·c·p0 with p0 primitive,
    /// the element is a unit iff c = 1 and p0 has top coefficient ±1.
    pub fn is_unit(&self) -> bool {
        if self.num.is_zero() {
            return false;
        }
        let (_, p) = laurent_split(&self.num);
        p.content().is_one() && p.leading().abs().is_one()
    }

    /// Evaluation at a rational point; `None` at a pole or at 0 with negative powers.
    pub fn eval(&self, a: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(a);
        if d.is_zero() {
            return None;
        }
        let (shift, p) = laurent_split(&self.num);
        if a.is_zero() && shift < 0 && !p.is_zero() {
            return None;
        }
        Some(p.eval_rational(a) * crate::ring::rational_pow(a, shift) / d)
    }

    /// Image in Q(t).
    pub fn to_ratfn(&self) -> RatFn<BigRational> {
        let (shift, p) = laurent_split(&self.num);
        let num = LaurentMPoly::from_upoly(shift, &p.to_rational());
        let den = LaurentMPoly::from_upoly(0, &self.den.to_rational());
        RatFn::new(num, den).expect("monic denominator")
    }

    /// Preimage of an element of Q(t), when it lies in R.
    pub fn from_ratfn(f: &RatFn<BigRational>) -> Option<Self> {
        if f.is_zero() {
            return Some(RationalFnR { num: GroupRingElement::zero(1), den: IntPoly::one() });
        }
        let (ns, np) = f.numerator().to_upoly();
        let (ds, dp) = f.denominator().to_upoly();
        let g = np.gcd(&dp);
        let (np, _) = np.div_rem(&g);
        let (dp, _) = dp.div_rem(&g);
        let d = IntPoly::from_rational_primitive(&dp);
        let (dk, d) = d.strip_t_power();
        if !d.leading().abs().is_one() {
            return None;
        }
        let d = d.normalized_sign();
        let scale = BigRational::from_integer(d.leading().clone()) / dp.leading()?.clone();
        let np = np.scale(&scale);
        let mut num = GroupRingElement::zero(1);
        for (i, c) in np.coeffs().iter().enumerate() {
            if !c.is_integer() {
                return None;
            }
            let e = ns - ds - dk as i64 + i as i64;
            num = num.add(&GroupRingElement::monomial(ExponentVector(vec![e]), c.to_integer()));
        }
        Some(RationalFnR { num, den: d })
    }

    /// Cancels a common monic factor of numerator and denominator.
    pub fn reduced(&self) -> Self {
        RationalFnR::from_ratfn(&self.to_ratfn()).expect("elements of R stay in R")
    }
}

impl PartialEq for RationalFnR {
    fn eq(&self, other: &Self) -> bool {
        let lhs = self.num.mul(&laurent_join(0, &other.den));
        let rhs = other.num.mul(&laurent_join(0, &self.den));
        lhs == rhs
    }
}

impl fmt::Debug for RationalFnR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Ring for RationalFnR {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        RationalFnR { num: GroupRingElement::zero(1), den: IntPoly::one() }
    }

    fn one_in(_: &()) -> Self {
        RationalFnR { num: GroupRingElement::one(1), den: IntPoly::one() }
    }

    fn from_int(n: &BigInt, _: &()) -> Self {
        RationalFnR { num: GroupRingElement::constant(1, n.clone()), den: IntPoly::one() }
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RationalFnR { num: self.num.add(&rhs.num), den: self.den.clone() };
        }
        let num = self.num.mul(&laurent_join(0, &rhs.den)).add(&rhs.num.mul(&laurent_join(0, &self.den)));
        RationalFnR { num, den: self.den.mul(&rhs.den) }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let den = if self.den.degree() == Some(0) {
            rhs.den.clone()
        } else if rhs.den.degree() == Some(0) {
            self.den.clone()
        } else {
            self.den.mul(&rhs.den)
        };
        RationalFnR { num: self.num.mul(&rhs.num), den }
    }

    fn neg(&self) -> Self {
        RationalFnR { num: self.num.negated(), den: self.den.clone() }
    }

    fn try_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (shift, p) = laurent_split(&self.num);
        let sign = if p.leading().is_negative() { BigInt::from(-1) } else { BigInt::one() };
        let num = laurent_join(-shift, &self.den.scale(&sign));
        Some(RationalFnR { num, den: p.scale(&sign) })
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// The representation rho_R: h maps to t^xi(h).
pub fn rho_r(p: &GroupRingElement, xi: &CohomologyClass) -> Result<RationalFnR> {
    xi.check_rank(p.rank())?;
    let w = xi.integer_weights()?;
    let num = p.map_exponents(1, |e| ExponentVector(vec![e.0.iter().zip(&w).map(|(a, b)| a * b).sum()]));
    RationalFnR::from_laurent(num)
}

pub fn r_is_unit(f: &RationalFnR) -> bool {
    f.is_unit()
}

/// Univariate Q-polynomial helper used by callers that need an R element as a
/// plain quotient of polynomials.
pub fn r_to_parts(f: &RationalFnR) -> (i64, UPoly<BigRational>, UPoly<BigRational>) {
    let (s, p) = laurent_split(&f.num);
    (s, p.to_rational(), f.den.to_rational())
}
