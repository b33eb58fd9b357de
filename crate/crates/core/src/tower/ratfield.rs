//! The rational-function field k(t_1, ..., t_n) over Q or a prime field.

use std::fmt;

use num_bigint::BigInt;

use crate::mpoly::LaurentMPoly;
use crate::ring::{CoeffField, Field, Ring};

/// Number of variables and the coefficient-field parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFnCtx<C> {
    pub nvars: usize,
    pub field: C,
}

impl<C> RatFnCtx<C> {
    pub fn new(nvars: usize, field: C) -> Self {
        RatFnCtx { nvars, field }
    }
}

/// Quotient of Laurent polynomials. The denominator is kept free of monomial
/// factors with lexicographic leading coefficient 1; in one variable the
/// fraction is fully reduced.
#[derive(Clone)]
pub struct RatFn<F: CoeffField> {
    num: LaurentMPoly<F>,
    den: LaurentMPoly<F>,
}

impl<F: CoeffField> RatFn<F> {
    pub fn from_poly(p: LaurentMPoly<F>) -> Self {
        let den = LaurentMPoly::one(p.nvars(), p.ctx());
        RatFn { num: p, den }
    }

    /// Builds `num / den`; `None` if `den` is zero.
    pub fn new(num: LaurentMPoly<F>, den: LaurentMPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalize(num, den))
    }

    pub fn numerator(&self) -> &LaurentMPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentMPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    fn normalize(num: LaurentMPoly<F>, den: LaurentMPoly<F>) -> Self {
        let nvars = num.nvars();
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return RatFn { num, den: LaurentMPoly::one(nvars, &ctx) };
        }
        let (shift, den) = den.split_monomial();
        let neg: Vec<i64> = shift.iter().map(|x| -x).collect();
        let mut num = num.shift(&neg);
        let mut den = den;
        if nvars == 1 {
            let (ns, np) = num.to_upoly();
            let (_, dp) = den.to_upoly();
            let g = np.gcd(&dp);
            let (nq, _) = np.div_rem(&g);
            let (dq, _) = dp.div_rem(&g);
            num = LaurentMPoly::from_upoly(ns, &nq);
            den = LaurentMPoly::from_upoly(0, &dq);
        } else if let Some(q) = num.div_exact(&den) {
            num = q;
            den = LaurentMPoly::one(nvars, &ctx);
        }
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = lc.try_inverse().expect("nonzero field element");
        RatFn { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// Evaluates at a point; `None` when the denominator vanishes there.
    pub fn eval(&self, point: &[F]) -> Option<F> {
        let d = self.den.eval(point)?;
        let n = self.num.eval(point)?;
        d.try_inverse().map(|di| n.mul(&di))
    }
}

impl<F: CoeffField> PartialEq for RatFn<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<F: CoeffField> fmt::Debug for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.num_terms() == 1 && self.den.leading().is_some_and(|(e, _)| e.iter().all(|&x| x == 0)) {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl<F: CoeffField> Ring for RatFn<F> {
    type Ctx = RatFnCtx<F::Ctx>;

    fn zero_in(ctx: &Self::Ctx) -> Self {
        RatFn::from_poly(LaurentMPoly::zero(ctx.nvars, &ctx.field))
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        RatFn::from_poly(LaurentMPoly::one(ctx.nvars, &ctx.field))
    }

    fn from_int(n: &BigInt, ctx: &Self::Ctx) -> Self {
        RatFn::from_poly(LaurentMPoly::from_int(ctx.nvars, n, &ctx.field))
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalize(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::from_poly(LaurentMPoly::zero(self.nvars(), self.num.ctx()));
        }
        Self::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalize(self.den.clone(), self.num.clone()))
        }
    }
}

impl<F: CoeffField> Field for RatFn<F> {}
