//! Univariate polynomials: over a coefficient field (`UPoly`) and over the
//! integers (`IntPoly`), with the content/primitive-part gcd machinery used for
//! determinantal divisors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::group_ring::{ExponentVector, GroupRingElement};
use crate::ring::CoeffField;

/// Polynomial over a coefficient field, coefficients stored low degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<F: CoeffField> {
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: CoeffField> UPoly<F> {
    pub fn new(ctx: F::Ctx, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        UPoly { ctx, coeffs }
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        UPoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        UPoly { ctx: ctx.clone(), coeffs: vec![F::one_in(ctx)] }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = F::zero_in(&self.ctx);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).add(other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        UPoly::new(self.ctx.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut coeffs = vec![F::zero_in(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(self.ctx.clone(), coeffs)
    }

    pub fn scale(&self, k: &F) -> Self {
        UPoly::new(self.ctx.clone(), self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().try_inverse().expect("field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero_in(&self.ctx); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().mul(&lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(d));
            }
            quot[k] = c;
            while rem.last().is_some_and(|c| c.is_zero_elem()) {
                rem.pop();
            }
        }
        (UPoly::new(self.ctx.clone(), quot), UPoly::new(self.ctx.clone(), rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.try_inverse().expect("field")),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero_in(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_int(&BigInt::from(i), &self.ctx)))
            .collect();
        UPoly::new(self.ctx.clone(), coeffs)
    }

    /// Strips the factor t^k so that the constant term is nonzero.
    pub fn strip_t_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero_elem()).count();
        if self.is_zero() {
            return (0, self.clone());
        }
        (k, UPoly::new(self.ctx.clone(), self.coeffs[k..].to_vec()))
    }
}

impl<F: CoeffField> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.render()).collect();
        write!(f, "UPoly[{}]", parts.join(", "))
    }
}

/// Polynomial in Z[t], coefficients low degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From a coefficient list written highest degree first.
    pub fn from_high_first(coeffs: &[BigInt]) -> Self {
        IntPoly::new(coeffs.iter().rev().cloned().collect())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn high_first(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Sign-normalized copy: positive leading coefficient.
    pub fn normalized_sign(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Removes the largest power of t dividing the polynomial.
    pub fn strip_t_power(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, IntPoly::new(self.coeffs[k..].to_vec()))
    }

    pub fn reversed(&self) -> Self {
        let (_, p) = self.strip_t_power();
        IntPoly::new(p.coeffs.into_iter().rev().collect())
    }

    pub fn to_rational(&self) -> UPoly<BigRational> {
        UPoly::new((), self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Clears denominators of a rational polynomial, returning the primitive integer multiple.
    pub fn from_rational_primitive(p: &UPoly<BigRational>) -> Self {
        if p.is_zero() {
            return IntPoly::default();
        }
        let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = p.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        IntPoly::new(ints).primitive_part()
    }

    /// Exact quotient in Z[t], or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::default());
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let (c, r) = rem.last().unwrap().div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        if rem.is_empty() {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Greatest common divisor in Z[t], with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let g = self.to_rational().gcd(&other.to_rational());
        IntPoly::from_rational_primitive(&g).scale(&c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Squarefree part over Q, returned primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return if self.is_zero() { self.clone() } else { IntPoly::one() };
        }
        let f = self.to_rational();
        let g = f.gcd(&f.derivative());
        let (q, _) = f.div_rem(&g);
        IntPoly::from_rational_primitive(&q)
    }

    /// All rational roots (without multiplicity), in increasing order.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        let (k, p) = self.strip_t_power();
        let mut roots = Vec::new();
        if k > 0 {
            roots.push(BigRational::zero());
        }
        if p.degree().unwrap_or(0) > 0 {
            let nums = divisors(&p.constant_term().abs());
            let dens = divisors(&p.leading().abs());
            for n in &nums {
                for d in &dens {
                    for sign in [1i32, -1] {
                        let cand = BigRational::new(n * BigInt::from(sign), d.clone());
                        if !roots.contains(&cand) && p.eval_rational(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut g = GroupRingElement::zero(1);
        for (i, c) in self.coeffs.iter().enumerate() {
            g.add_term(ExponentVector(vec![i as i64]), c.clone());
        }
        write!(f, "{g}")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Splits a one-variable Laurent polynomial as t^shift * p with p(0) != 0.
pub fn laurent_split(p: &GroupRingElement) -> (i64, IntPoly) {
    assert_eq!(p.rank(), 1, "laurent_split needs a one-variable element");
    let Some(low) = p.terms().map(|(e, _)| e.0[0]).min() else {
        return (0, IntPoly::default());
    };
    let high = p.terms().map(|(e, _)| e.0[0]).max().unwrap();
    let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
    for (e, c) in p.terms() {
        coeffs[(e.0[0] - low) as usize] = c.clone();
    }
    (low, IntPoly::new(coeffs))
}

/// Inverse of [`laurent_split`].
pub fn laurent_join(shift: i64, p: &IntPoly) -> GroupRingElement {
    let mut g = GroupRingElement::zero(1);
    for (i, c) in p.coeffs().iter().enumerate() {
        g.add_term(ExponentVector(vec![shift + i as i64]), c.clone());
    }
    g
}
