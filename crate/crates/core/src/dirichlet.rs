//! Algebraic-integer and Dirichlet-unit tests, and verification of witnesses
//! for xi-algebraic integers of rank-r line bundles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::group_ring::{CohomologyClass, GroupRingElement};
use crate::poly::{divisors, IntPoly};

/// Largest degree at which irreducibility is checked rather than trusted.
pub const MAX_CHECKED_DEGREE: usize = 4;

const MAX_KRONECKER_VALUE: u64 = 1 << 40;

/// A primitive integer polynomial with nonzero constant term, irreducible over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomialCandidate {
    poly: IntPoly,
}

impl MinimalPolynomialCandidate {
    /// Coefficients highest degree first. Irreducibility is checked up to
    /// degree four; above that the caller must vouch for it.
    pub fn new(coeffs_high_first: &[BigInt], caller_irreducible: bool) -> Result<Self> {
        let poly = IntPoly::from_high_first(coeffs_high_first);
        let degree = poly.degree().unwrap_or(0);
        if degree == 0 {
            return Err(AlgebraError::Precondition("minimal polynomial must have degree at least 1".into()));
        }
        if !poly.content().is_one() {
            return Err(AlgebraError::Precondition(format!("polynomial {poly} is not primitive")));
        }
        if poly.constant_term().is_zero() {
            return Err(AlgebraError::Precondition(format!("polynomial {poly} has zero constant term")));
        }
        if degree <= MAX_CHECKED_DEGREE {
            if let Some(factor) = small_degree_factor(&poly)? {
                return Err(AlgebraError::Structure(format!("{poly} is reducible over Q: factor {factor}")));
            }
        } else if !caller_irreducible {
            return Err(AlgebraError::Precondition(format!(
                "irreducibility above degree {MAX_CHECKED_DEGREE} must be asserted by the caller"
            )));
        }
        Ok(MinimalPolynomialCandidate { poly })
    }

    pub fn from_i64(coeffs_high_first: &[i64], caller_irreducible: bool) -> Result<Self> {
        let c: Vec<BigInt> = coeffs_high_first.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(&c, caller_irreducible)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Minimal polynomial of the inverse root.
    pub fn reversed(&self) -> Self {
        MinimalPolynomialCandidate { poly: self.poly.reversed() }
    }
}

/// A nonzero rational or an irreducible polynomial standing for its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicNumber {
    Rational(BigRational),
    Polynomial(MinimalPolynomialCandidate),
}

fn nonzero(x: &BigRational) -> Result<()> {
    if x.is_zero() {
        return Err(AlgebraError::UndefinedInput("zero is excluded".into()));
    }
    Ok(())
}

pub fn is_algebraic_integer(x: &AlgebraicNumber) -> Result<bool> {
    match x {
        AlgebraicNumber::Rational(q) => {
            nonzero(q)?;
            Ok(q.is_integer())
        }
        AlgebraicNumber::Polynomial(p) => Ok(p.poly.leading().abs().is_one()),
    }
}

/// An algebraic integer whose inverse is also an algebraic integer.
pub fn is_dirichlet_unit(x: &AlgebraicNumber) -> Result<bool> {
    match x {
        AlgebraicNumber::Rational(q) => {
            nonzero(q)?;
            Ok(q.abs().is_one())
        }
        AlgebraicNumber::Polynomial(p) => Ok(p.poly.leading().abs().is_one() && p.poly.constant_term().abs().is_one()),
    }
}

/// A proper factor of degree at most two, for polynomials of degree at most four.
fn small_degree_factor(p: &IntPoly) -> Result<Option<IntPoly>> {
    let degree = p.degree().unwrap_or(0);
    if degree <= 1 {
        return Ok(None);
    }
    if let Some(root) = p.rational_roots().first() {
        return Ok(Some(IntPoly::new(vec![-root.numer().clone(), root.denom().clone()])));
    }
    if degree < 4 {
        return Ok(None);
    }
    // Kronecker: a quadratic factor takes divisor values at -1, 0, 1.
    let at = |x: i64| p.eval_rational(&BigRational::from_integer(x.into())).to_integer();
    let values = [at(-1), at(0), at(1)];
    let mut choices = Vec::with_capacity(3);
    for v in &values {
        if v.abs() > BigInt::from(MAX_KRONECKER_VALUE) {
            return Err(AlgebraError::SizeLimit(format!("value {v} too large for factor enumeration")));
        }
        let ds = divisors(&v.abs());
        choices.push(ds.iter().flat_map(|d| [d.clone(), -d.clone()]).collect::<Vec<_>>());
    }
    let two = BigInt::from(2);
    for vm in &choices[0] {
        for v0 in &choices[1] {
            if v0.is_negative() {
                continue;
            }
            for vp in &choices[2] {
                let sum = vp + vm;
                let diff = vp - vm;
                if sum.is_odd() {
                    continue;
                }
                let a = &sum / &two - v0;
                let b = &diff / &two;
                if a.is_zero() {
                    continue;
                }
                let q = IntPoly::new(vec![v0.clone(), b, a]);
                if p.div_exact(&q).is_some() {
                    return Ok(Some(q.normalized_sign()));
                }
            }
        }
    }
    Ok(None)
}

/// Rational monodromy of a line bundle along the basis of H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundleMonodromy {
    values: Vec<BigRational>,
}

impl LineBundleMonodromy {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.iter().any(Zero::is_zero) {
            return Err(AlgebraError::Precondition("monodromy values must be nonzero".into()));
        }
        Ok(LineBundleMonodromy { values })
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    fn monomial(&self, exps: &[i64]) -> BigRational {
        let mut acc = BigRational::one();
        for (m, &e) in self.values.iter().zip(exps) {
            let base = if e < 0 { m.recip() } else { m.clone() };
            acc *= num_traits::pow(base, e.unsigned_abs() as usize);
        }
        acc
    }

    /// `ml(p)`: p evaluated at the monodromy values.
    pub fn evaluate(&self, p: &GroupRingElement) -> Result<BigRational> {
        if p.rank() != self.rank() {
            return Err(AlgebraError::Dimension(format!("element of rank {} against bundle of rank {}", p.rank(), self.rank())));
        }
        Ok(p.terms().fold(BigRational::zero(), |acc, (h, c)| acc + self.monomial(&h.0) * BigRational::from_integer(c.clone())))
    }
}

/// Integer basis of `{v in Z^r : sum w_i v_i = 0}` by unimodular column operations.
pub fn kernel_basis(w: &[BigInt]) -> Vec<Vec<BigInt>> {
    let r = w.len();
    let mut row: Vec<BigInt> = w.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..r).map(|i| (0..r).map(|j| BigInt::from((i == j) as u8)).collect()).collect();
    // Column j of u is stored as u[j].
    loop {
        let nz: Vec<usize> = (0..r).filter(|&i| !row[i].is_zero()).collect();
        if nz.len() <= 1 {
            let pivot = nz.first().copied();
            return (0..r).filter(|&i| Some(i) != pivot).map(|i| u[i].clone()).collect();
        }
        let p = *nz.iter().min_by_key(|&&i| row[i].abs()).expect("nonempty");
        for &i in &nz {
            if i == p {
                continue;
            }
            let q = row[i].div_floor(&row[p]);
            row[i] = &row[i] - &q * &row[p];
            let col_p = u[p].clone();
            for (x, y) in u[i].iter_mut().zip(&col_p) {
                *x -= &q * y;
            }
        }
    }
}

/// Checks that p witnesses the bundle as a xi-algebraic integer: `ml(p) = 0`
/// and the xi-top coefficient of p is ±1. The bundle must be trivial on ker xi.
pub fn verify_xi_algebraic_integer_witness(l: &LineBundleMonodromy, xi: &CohomologyClass, p: &GroupRingElement) -> Result<bool> {
    xi.check_rank(l.rank())?;
    xi.check_rank(p.rank())?;
    let lcm = xi.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<BigInt> = xi.weights().iter().map(|w| (w * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    for v in kernel_basis(&scaled) {
        let exps: Vec<i64> = v
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| AlgebraError::SizeLimit(format!("kernel exponent {x} out of range"))))
            .collect::<Result<_>>()?;
        if !l.monomial(&exps).is_one() {
            return Err(AlgebraError::Precondition(format!("monodromy is not trivial on ker xi: direction {exps:?}")));
        }
    }
    if p.is_zero() || !l.evaluate(p)?.is_zero() {
        return Ok(false);
    }
    Ok(matches!(p.xi_degree_and_top(xi)?, Some((_, top)) if top.abs().is_one()))
}
