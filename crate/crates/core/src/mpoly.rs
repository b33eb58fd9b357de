//! Multivariate Laurent polynomials over a coefficient field.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::poly::UPoly;
use crate::ring::CoeffField;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMPoly<F: CoeffField> {
    nvars: usize,
    ctx: F::Ctx,
    terms: BTreeMap<Vec<i64>, F>,
}

impl<F: CoeffField> LaurentMPoly<F> {
    pub fn zero(nvars: usize, ctx: &F::Ctx) -> Self {
        LaurentMPoly { nvars, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F, ctx: &F::Ctx) -> Self {
        Self::monomial(vec![0; nvars], c, ctx)
    }

    pub fn one(nvars: usize, ctx: &F::Ctx) -> Self {
        Self::constant(nvars, F::one_in(ctx), ctx)
    }

    pub fn monomial(exp: Vec<i64>, c: F, ctx: &F::Ctx) -> Self {
        let nvars = exp.len();
        let mut p = LaurentMPoly::zero(nvars, ctx);
        p.add_term(exp, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &F)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: F) {
        if c.is_zero_elem() {
            return;
        }
        debug_assert_eq!(exp.len(), self.nvars);
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero_elem() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentMPoly {
            nvars: self.nvars,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentMPoly::zero(self.nvars, &self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut out = LaurentMPoly::zero(self.nvars, &self.ctx);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(k));
        }
        out
    }

    pub fn shift(&self, by: &[i64]) -> Self {
        LaurentMPoly {
            nvars: self.nvars,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Vec<i64>, &F)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum exponent (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Writes self = t^shift * p with p a polynomial divisible by no variable.
    pub fn split_monomial(&self) -> (Vec<i64>, Self) {
        let m = self.min_exponents();
        let neg: Vec<i64> = m.iter().map(|x| -x).collect();
        (m, self.shift(&neg))
    }

    /// Exact quotient in the Laurent ring, `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        let (ma, a) = self.split_monomial();
        let (mb, b) = divisor.split_monomial();
        let (lb_exp, lb_coef) = b.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let lb_inv = lb_coef.try_inverse()?;
        let mut rem = a;
        let mut quot = LaurentMPoly::zero(self.nvars, &self.ctx);
        while let Some((le, lc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if le.iter().zip(&lb_exp).any(|(x, y)| x < y) {
                return None;
            }
            let qe: Vec<i64> = le.iter().zip(&lb_exp).map(|(x, y)| x - y).collect();
            let qc = lc.mul(&lb_inv);
            let term = LaurentMPoly::monomial(qe, qc, &self.ctx);
            rem = rem.sub(&term.mul(&b));
            quot = quot.add(&term);
        }
        let shift: Vec<i64> = ma.iter().zip(&mb).map(|(x, y)| x - y).collect();
        Some(quot.shift(&shift))
    }

    /// Evaluates at a point; `None` if a negative power of a zero coordinate is needed.
    pub fn eval(&self, point: &[F]) -> Option<F> {
        let mut acc = F::zero_in(&self.ctx);
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                let base = if k < 0 { x.try_inverse()? } else { x.clone() };
                for _ in 0..k.unsigned_abs() {
                    v = v.mul(&base);
                }
            }
            acc = acc.add(&v);
        }
        Some(acc)
    }

    /// Univariate view (after removing the monomial factor). Panics unless nvars == 1.
    pub fn to_upoly(&self) -> (i64, UPoly<F>) {
        assert_eq!(self.nvars, 1);
        let (m, p) = self.split_monomial();
        let deg = p.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![F::zero_in(&self.ctx); deg + 1];
        for (e, c) in &p.terms {
            coeffs[e[0] as usize] = c.clone();
        }
        (m[0], UPoly::new(self.ctx.clone(), coeffs))
    }

    pub fn from_upoly(shift: i64, p: &UPoly<F>) -> Self {
        let mut out = LaurentMPoly::zero(1, p.ctx());
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![shift + i as i64], c.clone());
        }
        out
    }

    pub fn from_int(nvars: usize, n: &BigInt, ctx: &F::Ctx) -> Self {
        Self::constant(nvars, F::from_int(n, ctx), ctx)
    }

    /// Total number of stored terms; used to bound expression growth.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

impl<F: CoeffField> fmt::Debug for LaurentMPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| {
                        let v = if self.nvars == 1 { "t".to_string() } else { format!("t{}", i + 1) };
                        if k == 1 {
                            v
                        } else {
                            format!("{v}^{k}")
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    c.render()
                } else {
                    format!("({})*{}", c.render(), mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
