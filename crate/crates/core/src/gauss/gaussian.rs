use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `re + im·i` of ℤ[i] with unbounded components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInteger { re: re.into(), im: im.into() }
    }

    pub fn from_int(re: impl Into<BigInt>) -> Self {
        GaussianInteger { re: re.into(), im: BigInt::zero() }
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// `1 + i`, the unique prime above 2 up to units.
    pub fn one_plus_i() -> Self {
        Self::new(1, 1)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianInteger { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianInteger::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &other.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then_some(GaussianInteger { re: qr, im: qi })
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Largest `k` with `q^k | self` for a rational prime `q` (valuation of both
    /// components). Returns `None` for zero.
    pub fn rational_valuation(&self, q: &BigInt) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let v = |x: &BigInt| -> u64 {
            if x.is_zero() {
                return u64::MAX;
            }
            let mut x = x.clone();
            let mut k = 0;
            loop {
                let (d, r) = x.div_rem(q);
                if !r.is_zero() {
                    return k;
                }
                x = d;
                k += 1;
            }
        };
        Some(v(&self.re).min(v(&self.im)))
    }

    pub fn to_small(&self) -> Result<Gi> {
        match (self.re.to_i64(), self.im.to_i64()) {
            (Some(re), Some(im)) if re.abs() < 1 << 40 && im.abs() < 1 << 40 => Ok(Gi::new(re, im)),
            _ => Err(Error::TooLarge(self.to_string())),
        }
    }
}

// Serialised as a pair of decimal strings so JSON keeps every digit.
impl Serialize for GaussianInteger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.re.to_string(), self.im.to_string()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianInteger {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(String, String)>::deserialize(d)?;
        let parse = |s: &str| s.parse::<BigInt>().map_err(serde::de::Error::custom);
        Ok(GaussianInteger { re: parse(&re)?, im: parse(&im)? })
    }
}

impl fmt::Display for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl From<Gi> for GaussianInteger {
    fn from(g: Gi) -> Self {
        GaussianInteger::new(g.re, g.im)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b GaussianInteger> for &'a GaussianInteger {
            type Output = GaussianInteger;
            fn $m(self, rhs: &'b GaussianInteger) -> GaussianInteger {
                let f: fn(&GaussianInteger, &GaussianInteger) -> GaussianInteger = $body;
                f(self, rhs)
            }
        }
        impl $tr for GaussianInteger {
            type Output = GaussianInteger;
            fn $m(self, rhs: GaussianInteger) -> GaussianInteger {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianInteger { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussianInteger { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| GaussianInteger {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Neg for GaussianInteger {
    type Output = GaussianInteger;
    fn neg(self) -> GaussianInteger {
        GaussianInteger { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianInteger {
    type Output = GaussianInteger;
    fn neg(self) -> GaussianInteger {
        GaussianInteger { re: -&self.re, im: -&self.im }
    }
}

/// Small Gaussian integer used by enumeration and character code. Components
/// stay below 2^40 so products of two elements fit an `i128` comfortably.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Gi {
    pub re: i64,
    pub im: i64,
}

pub const UNITS: [Gi; 4] = [Gi { re: 1, im: 0 }, Gi { re: 0, im: 1 }, Gi { re: -1, im: 0 }, Gi { re: 0, im: -1 }];

impl Gi {
    pub const fn new(re: i64, im: i64) -> Self {
        Gi { re, im }
    }

    pub const ONE: Gi = Gi::new(1, 0);
    pub const I: Gi = Gi::new(0, 1);

    pub fn norm(self) -> i128 {
        let (a, b) = (self.re as i128, self.im as i128);
        a * a + b * b
    }

    pub fn conj(self) -> Self {
        Gi::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn mul(self, o: Gi) -> Gi {
        Gi::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    pub fn add(self, o: Gi) -> Gi {
        Gi::new(self.re + o.re, self.im + o.im)
    }

    pub fn sub(self, o: Gi) -> Gi {
        Gi::new(self.re - o.re, self.im - o.im)
    }

    pub fn neg(self) -> Gi {
        Gi::new(-self.re, -self.im)
    }

    /// Quotient rounded to the nearest Gaussian integer (ties toward −∞).
    pub fn div_round(self, d: Gi) -> Gi {
        let n = d.norm();
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, e) = (d.re as i128, d.im as i128);
        let re = a * c + b * e;
        let im = b * c - a * e;
        let round = |x: i128| -> i64 { (2 * x + n).div_euclid(2 * n) as i64 };
        Gi::new(round(re), round(im))
    }

    /// Remainder with respect to rounded division; `N(r) ≤ N(d)/2`.
    pub fn rem(self, d: Gi) -> Gi {
        self.sub(d.mul(self.div_round(d)))
    }

    pub fn div_exact(self, d: Gi) -> Option<Gi> {
        let n = d.norm();
        if n == 0 {
            return None;
        }
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, e) = (d.re as i128, d.im as i128);
        let re = a * c + b * e;
        let im = b * c - a * e;
        (re % n == 0 && im % n == 0).then(|| Gi::new((re / n) as i64, (im / n) as i64))
    }

    pub fn divides(self, x: Gi) -> bool {
        x.div_exact(self).is_some()
    }

    pub fn gcd(self, o: Gi) -> Gi {
        let (mut a, mut b) = (self, o);
        while !b.is_zero() {
            let r = a.rem(b);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow(self, mut e: u64) -> Gi {
        let mut base = self;
        let mut acc = Gi::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(base);
            }
        }
        acc
    }

    /// `x^e mod m`, with every intermediate reduced by rounded division.
    pub fn pow_mod(self, mut e: u128, m: Gi) -> Gi {
        let mut base = self.rem(m);
        let mut acc = Gi::ONE.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(base).rem(m);
            }
        }
        acc
    }

    /// Primary: `self ≡ 1 mod (2+2i)`.
    pub fn is_primary(self) -> bool {
        let x = self.re - 1;
        let y = self.im;
        (x + y).rem_euclid(4) == 0 && (y - x).rem_euclid(4) == 0
    }

    /// Returns `(u, a)` with `self = u·a`, `u` a unit and `a` primary. Needs `self` odd.
    pub fn primary_decomposition(self) -> Option<(Gi, Gi)> {
        UNITS.iter().find_map(|&u| {
            // a = u⁻¹·self, and u⁻¹ = conj(u) for units
            let a = u.conj().mul(self);
            a.is_primary().then_some((u, a))
        })
    }

    /// Associate in the first quadrant (`re > 0, im ≥ 0`), the canonical
    /// generator of the ideal `(self)`.
    pub fn first_quadrant(self) -> Gi {
        let mut g = self;
        for _ in 0..4 {
            if g.re > 0 && g.im >= 0 {
                return g;
            }
            g = g.mul(Gi::I);
        }
        g
    }
}

impl fmt::Display for Gi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        GaussianInteger::from(*self).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_is_multiplicative() {
        let a = GaussianInteger::new(3, -7);
        let b = GaussianInteger::new(-11, 4);
        assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn units_are_exactly_the_fourth_roots_of_unity() {
        let mut units = vec![];
        for re in -3..=3 {
            for im in -3..=3 {
                if GaussianInteger::new(re, im).is_unit() {
                    units.push((re, im));
                }
            }
        }
        units.sort();
        assert_eq!(units, vec![(-1, 0), (0, -1), (0, 1), (1, 0)]);
    }

    #[test]
    fn exact_division() {
        let f = GaussianInteger::new(34, 34);
        let q = f.div_exact(&GaussianInteger::one_plus_i()).unwrap();
        assert_eq!(q, GaussianInteger::from_int(34));
        assert!(GaussianInteger::new(3, 0).div_exact(&GaussianInteger::new(1, 1)).is_none());
    }

    #[test]
    fn primary_associates() {
        let (u, a) = Gi::new(2, 1).primary_decomposition().unwrap();
        assert!(a.is_primary());
        assert_eq!(u.mul(a), Gi::new(2, 1));
        assert!(Gi::new(-3, 0).is_primary());
        assert!(Gi::new(1, 0).is_primary());
        assert!(Gi::new(1, 1).primary_decomposition().is_none());
    }

    #[test]
    fn rem_is_small() {
        let m = Gi::new(7, 3);
        for re in -20..20 {
            for im in -20..20 {
                let r = Gi::new(re, im).rem(m);
                assert!(2 * r.norm() <= m.norm());
                assert!(m.divides(Gi::new(re, im).sub(r)));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(GaussianInteger::new(3, -2).to_string(), "3-2i");
        assert_eq!(GaussianInteger::new(0, 5).to_string(), "5i");
        assert_eq!(GaussianInteger::new(-4, 0).to_string(), "-4");
    }
}
