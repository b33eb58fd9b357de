//! The commutative-ring abstraction shared by every coefficient ring of the tower.
//!
//! Elements carry whatever parameters they need (rank, class, cutoff, modulus),
//! and the `Ctx` type is what is required to manufacture constants when no
//! element is at hand, e.g. for an empty matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_int(n: &BigInt, ctx: &Self::Ctx) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one_in(&self, ctx: &Self::Ctx) -> bool {
        *self == Self::one_in(ctx)
    }

    /// Human-readable rendering used in error messages and reports.
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// Marker for rings in which every nonzero element is invertible.
pub trait Field: Ring {}

impl Ring for BigInt {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        BigInt::zero()
    }
    fn one_in(_: &()) -> Self {
        BigInt::one()
    }
    fn from_int(n: &BigInt, _: &()) -> Self {
        n.clone()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Ring for BigRational {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        BigRational::zero()
    }
    fn one_in(_: &()) -> Self {
        BigRational::one()
    }
    fn from_int(n: &BigInt, _: &()) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Field for BigRational {}

/// Element of the prime field with `modulus` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(&self, mut e: u64) -> Fp {
        let m = self.modulus as u128;
        let mut base = self.value as u128;
        let mut acc: u128 = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp { value: acc as u64, modulus: self.modulus }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// True for primes small enough for `Fp` arithmetic.
pub fn is_supported_prime(p: u64) -> bool {
    if p < 2 || p > u32::MAX as u64 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring for Fp {
    type Ctx = u64;

    fn zero_in(p: &u64) -> Self {
        Fp { value: 0, modulus: *p }
    }
    fn one_in(p: &u64) -> Self {
        Fp { value: 1 % *p, modulus: *p }
    }
    fn from_int(n: &BigInt, p: &u64) -> Self {
        let r = n.mod_floor(&BigInt::from(*p));
        Fp { value: r.to_u64().unwrap_or(0), modulus: *p }
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: ((self.value as u128 + rhs.value as u128) % self.modulus as u128) as u64, modulus: self.modulus }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
    fn render(&self) -> String {
        self.value.to_string()
    }
}

impl Field for Fp {}

/// Coefficient fields usable for polynomial and rational-function arithmetic.
pub trait CoeffField: Field + Eq + std::hash::Hash {
    fn from_rational(q: &BigRational, ctx: &Self::Ctx) -> Option<Self>;
}

impl CoeffField for BigRational {
    fn from_rational(q: &BigRational, _: &()) -> Option<Self> {
        Some(q.clone())
    }
}

impl CoeffField for Fp {
    fn from_rational(q: &BigRational, p: &u64) -> Option<Self> {
        let den = Fp::from_int(q.denom(), p);
        den.try_inverse().map(|d| Fp::from_int(q.numer(), p).mul(&d))
    }
}

pub fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_and_negation() {
        let a = Fp::new(3, 7);
        assert_eq!(a.mul(&a.try_inverse().unwrap()), Fp::one_in(&7));
        assert_eq!(a.add(&a.neg()), Fp::zero_in(&7));
        assert_eq!(Fp::new(-1, 7).value(), 6);
        assert!(Fp::zero_in(&7).try_inverse().is_none());
    }

    #[test]
    fn fp_from_rational_needs_invertible_denominator() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Fp::from_rational(&half, &5), Some(Fp::new(3, 5)));
        assert_eq!(Fp::from_rational(&half, &2), None);
    }

    #[test]
    fn prime_check() {
        assert!(is_supported_prime(2));
        assert!(is_supported_prime(101));
        assert!(!is_supported_prime(1));
        assert!(!is_supported_prime(91));
    }
}
