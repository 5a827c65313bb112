//! Field elements used to evaluate Plücker coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::is_prime;
use super::AlgebraError;

/// Arithmetic needed by determinants, twists and Laurent evaluation.
///
/// Constructors take `&self` so that modular elements can carry their modulus.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    // the receiver supplies the modulus
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, v: i64) -> Self;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint_like(&self, v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn pow_i64(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            sq = sq.clone() * sq;
            e >>= 1;
        }
        Some(acc)
    }

    /// Equal or negated.
    fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == -other.clone()
    }
}

/// A validated prime modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Modulus(u64);

impl Modulus {
    /// 2^61 - 1.
    pub const MERSENNE_61: Modulus = Modulus((1u64 << 61) - 1);

    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn element(self, v: u64) -> Fp {
        Fp { value: v % self.0, modulus: self }
    }

    pub fn from_i64(self, v: i64) -> Fp {
        let p = self.0 as i128;
        Fp { value: (v as i128).rem_euclid(p) as u64, modulus: self }
    }
}

impl Default for Modulus {
    fn default() -> Self {
        Modulus::MERSENNE_61
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: Modulus,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        let p = self.modulus.0;
        let s = self.value as u128 + o.value as u128;
        Fp { value: (s % p as u128) as u64, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        let p = self.modulus.0;
        let v = if self.value >= o.value { self.value - o.value } else { p - (o.value - self.value) };
        Fp { value: v, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        let p = self.modulus.0 as u128;
        Fp { value: ((self.value as u128 * o.value as u128) % p) as u64, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let v = if self.value == 0 { 0 } else { self.modulus.0 - self.value };
        Fp { value: v, modulus: self.modulus }
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.modulus.0, modulus: self.modulus }
    }
    fn from_i64_like(&self, v: i64) -> Self {
        self.modulus.from_i64(v)
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        let p = BigInt::from(self.modulus.0);
        let r = v.mod_floor(&p);
        Fp { value: r.to_u64().expect("reduced below modulus"), modulus: self.modulus }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let p = self.modulus.0;
        let mut acc = self.one_like();
        let mut sq = *self;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            e >>= 1;
        }
        Some(acc)
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Which field a computation runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Backend {
    Modular(Modulus),
    /// Exact rationals, sampling integer entries in `[-bound, bound]`.
    Rational { bound: i64 },
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Modular(Modulus::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse_roundtrip() {
        let m = Modulus::new(101).unwrap();
        for v in 1..101 {
            let a = m.element(v);
            assert_eq!(a * a.inv().unwrap(), a.one_like());
        }
        assert!(m.element(0).inv().is_none());
    }

    #[test]
    fn negative_powers() {
        let m = Modulus::MERSENNE_61;
        let a = m.from_i64(-7);
        let b = a.pow_i64(-3).unwrap() * a.pow_i64(3).unwrap();
        assert_eq!(b, a.one_like());
    }

    #[test]
    fn bigint_reduction_matches_i64() {
        let m = Modulus::new(97).unwrap();
        let z = m.element(0);
        for v in [-1000i64, -97, -1, 0, 5, 96, 97, 12345] {
            assert_eq!(z.from_bigint_like(&BigInt::from(v)), m.from_i64(v));
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(Modulus::new(91), Err(AlgebraError::NotPrime(91))));
    }

    #[test]
    fn rational_backend_is_exact() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let three = half.from_i64_like(3);
        assert_eq!(half.clone() * three.inv().unwrap() * half.from_i64_like(6), BigRational::one());
        assert_eq!(half.clone() + half, BigRational::one());
    }
}
