//! Coefficient rings for [`DensePolynomial`](super::DensePolynomial).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::analytic::ball::Ball;
use crate::gauss::GaussianInteger;

/// A commutative ring whose elements are plain values.
pub trait CoeffRing: Clone + Send + Sync {
    type Elem: Clone + Send + Sync + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn mul_i64(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }

    /// `a + b·n`, the shape of every recurrence update.
    fn add_mul_i64(&self, a: &Self::Elem, b: &Self::Elem, n: i64) -> Self::Elem {
        self.add(a, &self.mul_i64(b, n))
    }
}

/// Exact integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn mul_i64(&self, a: &BigInt, n: i64) -> BigInt {
        a * n
    }
}

/// Exact Gaussian integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GaussianIntegers;

impl CoeffRing for GaussianIntegers {
    type Elem = GaussianInteger;

    fn zero(&self) -> GaussianInteger {
        GaussianInteger::default()
    }
    fn from_i64(&self, n: i64) -> GaussianInteger {
        GaussianInteger::from_int(n)
    }
    fn add(&self, a: &GaussianInteger, b: &GaussianInteger) -> GaussianInteger {
        a + b
    }
    fn mul(&self, a: &GaussianInteger, b: &GaussianInteger) -> GaussianInteger {
        a * b
    }
    fn is_zero(&self, a: &GaussianInteger) -> bool {
        a.is_zero()
    }
    fn mul_i64(&self, a: &GaussianInteger, n: i64) -> GaussianInteger {
        GaussianInteger { re: &a.re * n, im: &a.im * n }
    }
}

/// `ℤ/m` for an arbitrary modulus, elements stored reduced in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModRing {
    pub modulus: BigUint,
}

impl ModRing {
    pub fn new(modulus: BigUint) -> Self {
        ModRing { modulus }
    }

    pub fn prime_power(p: u64, m: u32) -> Self {
        ModRing { modulus: BigUint::from(p).pow(m) }
    }

    pub fn reduce(&self, a: &BigInt) -> BigUint {
        a.mod_floor(&BigInt::from(self.modulus.clone())).to_biguint().expect("nonnegative")
    }
}

impl CoeffRing for ModRing {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn from_i64(&self, n: i64) -> BigUint {
        self.reduce(&BigInt::from(n))
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.modulus
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.modulus
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
}

/// `ℤ/m` for `m < 2^63`, elements in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModU64 {
    pub modulus: u64,
}

impl ModU64 {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus > 1 && modulus < 1 << 63);
        ModU64 { modulus }
    }

    /// `p^m` if it fits, otherwise `None`.
    pub fn prime_power(p: u64, m: u32) -> Option<Self> {
        p.checked_pow(m).filter(|&q| q < 1 << 63).map(ModU64::new)
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }

    pub fn reduce_big(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("reduced")
    }
}

impl CoeffRing for ModU64 {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Real balls at a fixed precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallRing {
    pub prec: u32,
}

impl Default for BallRing {
    fn default() -> Self {
        BallRing { prec: 192 }
    }
}

impl CoeffRing for BallRing {
    type Elem = Ball;

    fn zero(&self) -> Ball {
        Ball::zero(self.prec)
    }
    fn from_i64(&self, n: i64) -> Ball {
        Ball::from_int(n, self.prec)
    }
    fn add(&self, a: &Ball, b: &Ball) -> Ball {
        a.add(b)
    }
    fn mul(&self, a: &Ball, b: &Ball) -> Ball {
        a.mul(b)
    }
    fn is_zero(&self, a: &Ball) -> bool {
        a.mid_raw().is_zero() && a.rad().is_zero()
    }
    fn mul_i64(&self, a: &Ball, n: i64) -> Ball {
        a.mul_i64(n)
    }
}
