//! Laurent-polynomial group rings Z[H] for H free abelian of rank r, together
//! with the weight structure induced by a real (here: rational) class on H.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::matrix::RingMatrix;
use crate::ring::Ring;

/// Exponents of a monomial of H on the fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }
}

/// A class xi: H -> Q given by its values on the basis of H.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    weights: Vec<BigRational>,
}

impl CohomologyClass {
    pub fn new(weights: Vec<BigRational>) -> Self {
        CohomologyClass { weights }
    }

    pub fn from_integers(weights: &[i64]) -> Self {
        CohomologyClass { weights: weights.iter().map(|&w| BigRational::from_integer(w.into())).collect() }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn is_integral(&self) -> bool {
        self.weights.iter().all(|w| w.is_integer())
    }

    /// Integer weights, or a representation error for non-integral classes.
    pub fn integer_weights(&self) -> Result<Vec<i64>> {
        self.weights
            .iter()
            .map(|w| {
                if !w.is_integer() {
                    return Err(AlgebraError::Representation(format!("class weight {w} is not integral")));
                }
                i64::try_from(w.to_integer())
                    .map_err(|_| AlgebraError::Representation(format!("class weight {w} out of range")))
            })
            .collect()
    }

    /// Exact xi-weight of a monomial.
    pub fn weight(&self, m: &ExponentVector) -> Result<BigRational> {
        if m.len() != self.rank() {
            return Err(AlgebraError::Dimension(format!(
                "exponent vector of length {} against class of rank {}",
                m.len(),
                self.rank()
            )));
        }
        Ok(self.weight_unchecked(m))
    }

    pub(crate) fn weight_unchecked(&self, m: &ExponentVector) -> BigRational {
        let mut acc = BigRational::zero();
        for (w, &e) in self.weights.iter().zip(&m.0) {
            if e != 0 {
                acc += w * BigRational::from_integer(e.into());
            }
        }
        acc
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if rank != self.rank() {
            return Err(AlgebraError::Dimension(format!("element of rank {rank} against class of rank {}", self.rank())));
        }
        Ok(())
    }
}

pub fn weight(xi: &CohomologyClass, m: &ExponentVector) -> Result<BigRational> {
    xi.weight(m)
}

/// Element of Z[H]: finite integer combination of monomials, never storing a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    rank: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl GroupRingElement {
    pub fn zero(rank: usize) -> Self {
        GroupRingElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(ExponentVector::zero(rank), BigInt::one())
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(rank), c.into())
    }

    pub fn monomial(exp: ExponentVector, coef: BigInt) -> Self {
        let rank = exp.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        GroupRingElement { rank, terms }
    }

    /// Builds an element from (exponent, coefficient) pairs, merging repeats.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut out = GroupRingElement::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(AlgebraError::Dimension(format!("exponent {:?} in a rank-{rank} group ring", e.0)));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Convenience constructor from integer tuples.
    pub fn from_pairs(rank: usize, pairs: &[(&[i64], i64)]) -> Self {
        let terms = pairs.iter().map(|(e, c)| (ExponentVector(e.to_vec()), BigInt::from(*c)));
        Self::from_terms(rank, terms).expect("exponent lengths must match rank")
    }

    pub(crate) fn add_term(&mut self, exp: ExponentVector, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&ExponentVector::zero(self.rank))
    }

    fn check_same_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(AlgebraError::Dimension(format!("group ring ranks {} and {}", self.rank, other.rank)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        Ok(self.add_unchecked(&other.negated()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn negated(&self) -> Self {
        GroupRingElement { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = GroupRingElement::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.plus(e2), c1 * c2);
            }
        }
        out
    }

    /// Product keeping only monomials of weight at least `cutoff`.
    pub(crate) fn mul_truncated(&self, other: &Self, xi: &CohomologyClass, cutoff: &BigRational) -> Self {
        let mut out = GroupRingElement::zero(self.rank);
        let w2: Vec<(BigRational, &ExponentVector, &BigInt)> =
            other.terms.iter().map(|(e, c)| (xi.weight_unchecked(e), e, c)).collect();
        for (e1, c1) in &self.terms {
            let w1 = xi.weight_unchecked(e1);
            for (w, e2, c2) in &w2 {
                if &w1 + w >= *cutoff {
                    out.add_term(e1.plus(e2), c1 * *c2);
                }
            }
        }
        out
    }

    /// Drops every monomial of weight strictly below `cutoff`.
    pub fn truncate_below(&self, xi: &CohomologyClass, cutoff: &BigRational) -> Self {
        GroupRingElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| xi.weight_unchecked(e) >= *cutoff)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every monomial of weight strictly above `level`.
    pub fn truncate_above(&self, xi: &CohomologyClass, level: &BigRational) -> Self {
        GroupRingElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| xi.weight_unchecked(e) <= *level)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest weight of a stored monomial; `None` for zero.
    pub fn max_weight(&self, xi: &CohomologyClass) -> Option<BigRational> {
        self.terms.keys().map(|e| xi.weight_unchecked(e)).max()
    }

    pub fn min_weight(&self, xi: &CohomologyClass) -> Option<BigRational> {
        self.terms.keys().map(|e| xi.weight_unchecked(e)).min()
    }

    /// Multiplies by the monomial `h`.
    pub fn shifted(&self, h: &ExponentVector) -> Self {
        GroupRingElement { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.plus(h), c.clone())).collect() }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return GroupRingElement::zero(self.rank);
        }
        GroupRingElement { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    /// True iff every stored monomial has strictly negative weight (vacuously true for 0).
    pub fn is_xi_negative(&self, xi: &CohomologyClass) -> Result<bool> {
        xi.check_rank(self.rank)?;
        Ok(self.terms.keys().all(|e| xi.weight_unchecked(e).is_negative()))
    }

    /// The xi-degree and xi-top coefficient: the highest weight level whose
    /// coefficient sum is nonzero, with that sum. `None` if every level sum vanishes.
    pub fn xi_degree_and_top(&self, xi: &CohomologyClass) -> Result<Option<(BigRational, BigInt)>> {
        xi.check_rank(self.rank)?;
        if self.is_zero() {
            return Err(AlgebraError::UndefinedInput("xi-degree of the zero element".into()));
        }
        let mut levels: BTreeMap<BigRational, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            *levels.entry(xi.weight_unchecked(e)).or_default() += c;
        }
        Ok(levels.into_iter().rev().find(|(_, s)| !s.is_zero()))
    }

    /// Applies `f` to every exponent vector, producing an element of rank `new_rank`.
    pub fn map_exponents<F>(&self, new_rank: usize, f: F) -> Self
    where
        F: Fn(&ExponentVector) -> ExponentVector,
    {
        let mut out = GroupRingElement::zero(new_rank);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// The augmentation: sum of all coefficients (evaluation at the trivial character).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Parses expressions such as `1 - t^-1`, `2*t1 - t2`, `t1^-1*t2^3`.
    /// In rank 1 the variable may be written `t` or `t1`.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| AlgebraError::Parse(format!("{msg} in `{s}`"));
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(GroupRingElement::zero(rank));
        }
        let bytes: Vec<char> = cleaned.chars().collect();
        // split into signed terms at top-level +/- not following '^'
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (idx, &ch) in bytes.iter().enumerate() {
            let after_caret = idx > 0 && bytes[idx - 1] == '^';
            if (ch == '+' || ch == '-') && !after_caret {
                if !cur.is_empty() {
                    pieces.push((negative, std::mem::take(&mut cur)));
                } else if idx != 0 {
                    return Err(err("dangling sign"));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err("trailing sign"));
        }
        pieces.push((negative, cur));

        let mut out = GroupRingElement::zero(rank);
        for (neg, piece) in pieces {
            let mut coef = BigInt::one();
            let mut exp = vec![0i64; rank];
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('t') {
                    let (var, power) = match rest.split_once('^') {
                        Some((v, p)) => (v, p.parse::<i64>().map_err(|_| err("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx = if var.is_empty() {
                        if rank != 1 {
                            return Err(err("bare `t` needs rank 1"));
                        }
                        0
                    } else {
                        let k: usize = var.parse().map_err(|_| err("bad variable index"))?;
                        if k == 0 || k > rank {
                            return Err(err("variable index out of range"));
                        }
                        k - 1
                    };
                    exp[idx] += power;
                } else {
                    let c: BigInt = factor.parse().map_err(|_| err("bad coefficient"))?;
                    coef *= c;
                }
            }
            if neg {
                coef = -coef;
            }
            out.add_term(ExponentVector(exp), coef);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest exponents first reads naturally for Laurent polynomials
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| {
                    let var = if self.rank == 1 { "t".to_string() } else { format!("t{}", i + 1) };
                    if p == 1 {
                        var
                    } else {
                        format!("{var}^{p}")
                    }
                })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Ring for GroupRingElement {
    type Ctx = usize;

    fn zero_in(rank: &usize) -> Self {
        GroupRingElement::zero(*rank)
    }
    fn one_in(rank: &usize) -> Self {
        GroupRingElement::one(*rank)
    }
    fn from_int(n: &BigInt, rank: &usize) -> Self {
        GroupRingElement::constant(*rank, n.clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.rank, rhs.rank, "group ring rank mismatch");
        self.add_unchecked(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.rank, rhs.rank, "group ring rank mismatch");
        self.mul_unchecked(rhs)
    }
    fn neg(&self) -> Self {
        self.negated()
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some(GroupRingElement::monomial(e.negated(), c.clone()))
        } else {
            None
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

pub fn is_xi_negative(xi: &CohomologyClass, p: &GroupRingElement) -> Result<bool> {
    p.is_xi_negative(xi)
}

/// Conjunction of xi-negativity over all entries.
pub fn is_xi_negative_matrix(xi: &CohomologyClass, a: &RingMatrix<GroupRingElement>) -> Result<bool> {
    xi.check_rank(*a.ctx())?;
    for entry in a.entries() {
        if !entry.is_xi_negative(xi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn xi_degree_and_top(xi: &CohomologyClass, p: &GroupRingElement) -> Result<Option<(BigRational, BigInt)>> {
    p.xi_degree_and_top(xi)
}
