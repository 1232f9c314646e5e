//! Midpoint–radius arithmetic over fixed-point big integers.
//!
//! A [`Ball`] is `mid·2^(−prec) ± rad`. Every operation returns a ball that
//! contains the exact result of the operation applied to any points of the
//! operand balls; radii are [`Mag`] values rounded upward.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::gauss::{GaussianInteger, Gi};

const UP: f64 = 1.0 + 4.0 * f64::EPSILON;
const DOWN: f64 = 1.0 - 4.0 * f64::EPSILON;

/// Nonnegative number `m·2^e` with `m ∈ [0.5, 1)` (or zero), used for radii.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mag {
    m: f64,
    e: i64,
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, exp - 1022)
}

impl Mag {
    pub const ZERO: Mag = Mag { m: 0.0, e: 0 };

    fn norm(m: f64, e: i64) -> Mag {
        if m == 0.0 {
            return Mag::ZERO;
        }
        let (fm, fe) = frexp(m);
        Mag { m: fm, e: e + fe }
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { m: 0.5, e: e + 1 }
    }

    pub fn from_f64(x: f64) -> Mag {
        assert!(x >= 0.0 && x.is_finite());
        Mag::norm(x * UP, 0)
    }

    pub fn is_zero(self) -> bool {
        self.m == 0.0
    }

    /// Upper bound for `|x|·2^(−shift)`.
    pub fn from_bigint(x: &BigInt, shift: i64) -> Mag {
        let bits = x.bits() as i64;
        if bits == 0 {
            return Mag::ZERO;
        }
        if bits <= 53 {
            return Mag::norm(x.abs().to_f64().unwrap(), -shift);
        }
        let top = (x.magnitude() >> (bits - 53) as usize).to_f64().unwrap() + 1.0;
        Mag::norm(top, bits - 53 - shift)
    }

    /// Lower bound for `|x|·2^(−shift)`.
    pub fn lower_from_bigint(x: &BigInt, shift: i64) -> Mag {
        let bits = x.bits() as i64;
        if bits == 0 {
            return Mag::ZERO;
        }
        if bits <= 53 {
            return Mag::norm(x.abs().to_f64().unwrap(), -shift);
        }
        let top = (x.magnitude() >> (bits - 53) as usize).to_f64().unwrap();
        Mag::norm(top, bits - 53 - shift)
    }

    pub fn add(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = hi.e - lo.e;
        let small = if d > 1000 { f64::EPSILON } else { lo.m * 2f64.powi(-(d as i32)) };
        Mag::norm((hi.m + small) * UP, hi.e)
    }

    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.m * o.m * UP, self.e + o.e)
    }

    pub fn mul_f64(self, x: f64) -> Mag {
        self.mul(Mag::from_f64(x))
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { m: self.m, e: self.e + k }
        }
    }

    /// Upper bound for `self / o`.
    pub fn div(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "division by zero magnitude");
        if self.is_zero() {
            return self;
        }
        Mag::norm(self.m / o.m * UP * UP, self.e - o.e)
    }

    pub fn pow(self, k: u32) -> Mag {
        (0..k).fold(Mag::pow2(0), |acc, _| acc.mul(self))
    }

    /// Lower bound for `self − o`, or `None` when it may be nonpositive.
    pub fn sub_lower(self, o: Mag) -> Option<Mag> {
        if o.is_zero() {
            return Some(Mag::norm(self.m * DOWN, self.e));
        }
        if self.is_zero() || o.e > self.e {
            return None;
        }
        let d = self.e - o.e;
        let small = if d > 1000 { f64::EPSILON } else { o.m * 2f64.powi(-(d as i32)) * UP };
        let v = (self.m - small) * DOWN;
        (v > 0.0).then(|| Mag::norm(v, self.e))
    }

    /// Upper bound for `√self`.
    pub fn sqrt_upper(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (m, e) = if self.e % 2 == 0 { (self.m, self.e) } else { (self.m * 0.5, self.e + 1) };
        Mag::norm(m.sqrt() * UP, e / 2)
    }

    /// Lower bound for `√self`.
    pub fn sqrt_lower(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (m, e) = if self.e % 2 == 0 { (self.m, self.e) } else { (self.m * 0.5, self.e + 1) };
        Mag::norm(m.sqrt() * DOWN, e / 2)
    }

    pub fn log2(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.m.log2() + self.e as f64
        }
    }

    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            0.0
        } else if self.e > 1000 {
            f64::INFINITY
        } else if self.e < -1070 {
            0.0
        } else {
            self.m * 2f64.powi(self.e as i32)
        }
    }

    pub fn max(self, o: Mag) -> Mag {
        if self.cmp_mag(o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    pub fn cmp_mag(self, o: Mag) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.e.cmp(&o.e).then(self.m.partial_cmp(&o.m).unwrap()),
        }
    }

    pub fn lt(self, o: Mag) -> bool {
        self.cmp_mag(o) == Ordering::Less
    }
}

/// Real ball `mid·2^(−prec) ± rad`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    mid: BigInt,
    rad: Mag,
    prec: u32,
}

fn shr_floor(x: BigInt, k: u32) -> BigInt {
    // `>>` on BigInt rounds toward −∞, which is what fixed-point truncation needs
    x >> k as usize
}

impl Ball {
    pub fn zero(prec: u32) -> Ball {
        Ball { mid: BigInt::zero(), rad: Mag::ZERO, prec }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Ball {
        Ball { mid: n.into() << prec as usize, rad: Mag::ZERO, prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Ball {
        let num = q.numer() << prec as usize;
        let (mid, rem) = num.div_mod_floor(q.denom());
        let rad = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(-(prec as i64)) };
        Ball { mid, rad, prec }
    }

    pub fn from_f64(x: f64, prec: u32) -> Ball {
        let (m, e) = frexp(x);
        let mant = (m * 2f64.powi(53)) as i64;
        let shift = e - 53 + prec as i64;
        let mid = if shift >= 0 { BigInt::from(mant) << shift as usize } else { BigInt::from(mant) >> (-shift) as usize };
        let rad = if shift >= 0 { Mag::ZERO } else { Mag::pow2(-(prec as i64)) };
        Ball { mid, rad, prec }
    }

    /// Ball from raw parts: value `mid·2^(−prec) ± rad`.
    pub fn from_parts(mid: BigInt, rad: Mag, prec: u32) -> Ball {
        Ball { mid, rad, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn ulp(&self) -> Mag {
        Mag::pow2(-(self.prec as i64))
    }

    pub fn with_rad(mut self, extra: Mag) -> Ball {
        self.rad = self.rad.add(extra);
        self
    }

    /// Upper bound for `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_bigint(&self.mid, self.prec as i64).add(self.rad)
    }

    /// Lower bound for `|x|` over the ball (zero if the ball touches zero).
    pub fn abs_lower(&self) -> Mag {
        Mag::lower_from_bigint(&self.mid, self.prec as i64).sub_lower(self.rad).unwrap_or(Mag::ZERO)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    pub fn mid_f64(&self) -> f64 {
        let bits = self.mid.bits() as i64;
        if bits <= 60 {
            self.mid.to_f64().unwrap() * 2f64.powi(-(self.prec as i32))
        } else {
            let top = (&self.mid >> (bits - 60) as usize).to_f64().unwrap();
            top * 2f64.powf((bits - 60 - self.prec as i64) as f64)
        }
    }

    /// Rounds the midpoint to the nearest integer; returns it with an upper
    /// bound on `|x − n|` over the whole ball.
    pub fn round_to_integer(&self) -> (BigInt, Mag) {
        let half = BigInt::one() << (self.prec as usize).saturating_sub(1);
        let n = shr_floor(&self.mid + half, self.prec);
        let diff = &self.mid - (&n << self.prec as usize);
        (n, Mag::from_bigint(&diff, self.prec as i64).add(self.rad))
    }

    pub fn set_prec(&self, prec: u32) -> Ball {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Ball { mid: &self.mid << (prec - self.prec) as usize, rad: self.rad, prec },
            Ordering::Less => Ball {
                mid: shr_floor(self.mid.clone(), self.prec - prec),
                rad: self.rad.add(Mag::pow2(-(prec as i64))),
                prec,
            },
        }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad, prec: self.prec }
    }

    pub fn add(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball { mid: &self.mid + &o.mid, rad: self.rad.add(o.rad), prec: self.prec }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball { mid: &self.mid - &o.mid, rad: self.rad.add(o.rad), prec: self.prec }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        let mid = shr_floor(&self.mid * &o.mid, self.prec);
        let a = Mag::from_bigint(&self.mid, self.prec as i64);
        let b = Mag::from_bigint(&o.mid, o.prec as i64);
        let rad = a.mul(o.rad).add(b.mul(self.rad)).add(self.rad.mul(o.rad)).add(self.ulp());
        Ball { mid, rad, prec: self.prec }
    }

    pub fn sqr(&self) -> Ball {
        self.mul(self)
    }

    pub fn mul_int(&self, n: &BigInt) -> Ball {
        let rad = self.rad.mul(Mag::from_bigint(n, 0));
        Ball { mid: &self.mid * n, rad, prec: self.prec }
    }

    pub fn mul_i64(&self, n: i64) -> Ball {
        self.mul_int(&BigInt::from(n))
    }

    /// Exact multiplication by `2^k` (`k` may be negative; right shifts round).
    pub fn mul_2exp(&self, k: i64) -> Ball {
        if k >= 0 {
            Ball { mid: &self.mid << k as usize, rad: self.rad.mul_2exp(k), prec: self.prec }
        } else {
            Ball {
                mid: shr_floor(self.mid.clone(), (-k) as u32),
                rad: self.rad.mul_2exp(k).add(self.ulp()),
                prec: self.prec,
            }
        }
    }

    pub fn div_int(&self, n: &BigInt) -> Ball {
        assert!(!n.is_zero());
        let mid = self.mid.div_floor(n);
        let rad = self.rad.div(Mag::lower_from_bigint(n, 0)).add(self.ulp());
        Ball { mid, rad, prec: self.prec }
    }

    /// `1/x`, or `None` if the ball contains zero.
    pub fn inv(&self) -> Option<Ball> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return None;
        }
        let one = BigInt::one() << (2 * self.prec as usize);
        let mid = one.div_floor(&self.mid);
        let m = Mag::lower_from_bigint(&self.mid, self.prec as i64);
        let rad = self.rad.div(lo.mul(m).mul_f64(DOWN)).add(self.ulp());
        Some(Ball { mid, rad, prec: self.prec })
    }

    pub fn div(&self, o: &Ball) -> Option<Ball> {
        Some(self.mul(&o.inv()?))
    }

    /// Square root of a ball whose points are all positive.
    pub fn sqrt(&self) -> Option<Ball> {
        if self.mid.sign() != Sign::Plus {
            return None;
        }
        let lo = self.abs_lower();
        if lo.is_zero() {
            return None;
        }
        let mid = (&self.mid << self.prec as usize).sqrt();
        // |√x − √m| ≤ r / √(m − r)
        let sqrt_lo = lo.sqrt_lower();
        let rad = self.rad.div(sqrt_lo).add(self.ulp());
        Some(Ball { mid, rad, prec: self.prec })
    }

    pub fn max_rad(&self, o: &Ball) -> Mag {
        self.rad.max(o.rad)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e} ± 2^{:.1}", self.mid_f64(), self.rad.log2())
    }
}

/// Complex ball with independent real and imaginary balls.
#[derive(Clone, Debug, PartialEq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> CBall {
        debug_assert_eq!(re.prec, im.prec);
        CBall { re, im }
    }

    pub fn zero(prec: u32) -> CBall {
        CBall { re: Ball::zero(prec), im: Ball::zero(prec) }
    }

    pub fn from_real(re: Ball) -> CBall {
        let prec = re.prec;
        CBall { re, im: Ball::zero(prec) }
    }

    pub fn from_gi(g: Gi, prec: u32) -> CBall {
        CBall { re: Ball::from_int(g.re, prec), im: Ball::from_int(g.im, prec) }
    }

    pub fn from_gaussian(g: &GaussianInteger, prec: u32) -> CBall {
        CBall { re: Ball::from_int(g.re.clone(), prec), im: Ball::from_int(g.im.clone(), prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn set_prec(&self, prec: u32) -> CBall {
        CBall { re: self.re.set_prec(prec), im: self.im.set_prec(prec) }
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> CBall {
        CBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul_i(&self) -> CBall {
        CBall { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        CBall {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn sqr(&self) -> CBall {
        CBall {
            re: self.re.sqr().sub(&self.im.sqr()),
            im: self.re.mul(&self.im).mul_2exp(1),
        }
    }

    pub fn mul_real(&self, x: &Ball) -> CBall {
        CBall { re: self.re.mul(x), im: self.im.mul(x) }
    }

    pub fn mul_int(&self, n: &BigInt) -> CBall {
        CBall { re: self.re.mul_int(n), im: self.im.mul_int(n) }
    }

    pub fn mul_i64(&self, n: i64) -> CBall {
        self.mul_int(&BigInt::from(n))
    }

    pub fn mul_gaussian(&self, g: &GaussianInteger) -> CBall {
        CBall {
            re: self.re.mul_int(&g.re).sub(&self.im.mul_int(&g.im)),
            im: self.re.mul_int(&g.im).add(&self.im.mul_int(&g.re)),
        }
    }

    pub fn mul_gi(&self, g: Gi) -> CBall {
        self.mul_gaussian(&g.into())
    }

    pub fn mul_2exp(&self, k: i64) -> CBall {
        CBall { re: self.re.mul_2exp(k), im: self.im.mul_2exp(k) }
    }

    pub fn div_int(&self, n: &BigInt) -> CBall {
        CBall { re: self.re.div_int(n), im: self.im.div_int(n) }
    }

    pub fn norm_sqr(&self) -> Ball {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn inv(&self) -> Option<CBall> {
        let n = self.norm_sqr().inv()?;
        Some(self.conj().mul_real(&n))
    }

    pub fn div(&self, o: &CBall) -> Option<CBall> {
        Some(self.mul(&o.inv()?))
    }

    pub fn abs_upper(&self) -> Mag {
        let (a, b) = (self.re.abs_upper(), self.im.abs_upper());
        a.mul(a).add(b.mul(b)).sqrt_upper()
    }

    pub fn abs_lower(&self) -> Mag {
        self.re.abs_lower().max(self.im.abs_lower())
    }

    pub fn rad(&self) -> Mag {
        self.re.rad.max(self.im.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    /// Nearest Gaussian integer and an upper bound for the distance from any
    /// point of the ball to it (max over the two components).
    pub fn round_to_gaussian(&self) -> (GaussianInteger, Mag) {
        let (re, er) = self.re.round_to_integer();
        let (im, ei) = self.im.round_to_integer();
        (GaussianInteger { re, im }, er.max(ei))
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    #[test]
    fn mag_arithmetic_is_upward() {
        let a = Mag::from_f64(3.0);
        let b = Mag::from_f64(5.0);
        assert!(a.mul(b).to_f64() >= 15.0);
        assert!(a.add(b).to_f64() >= 8.0);
        assert!(b.sub_lower(a).unwrap().to_f64() <= 2.0);
        assert!(a.sub_lower(b).is_none());
        assert!(Mag::pow2(-5000).mul(Mag::pow2(4000)).log2() >= -1000.0 - 1e-9);
    }

    #[test]
    fn arithmetic_contains_exact_results() {
        let a = Ball::from_rational(&BigRational::new(1.into(), 3.into()), P);
        let b = Ball::from_int(7, P);
        let c = a.mul(&b); // 7/3
        let back = c.mul(&Ball::from_int(3, P)).sub(&Ball::from_int(7, P));
        assert!(back.contains_zero());
        let inv = c.inv().unwrap().mul(&c).sub(&Ball::from_int(1, P));
        assert!(inv.contains_zero());
        assert!(inv.rad().log2() < -(P as f64) + 10.0);
    }

    #[test]
    fn sqrt_of_two() {
        let s = Ball::from_int(2, P).sqrt().unwrap();
        assert!(s.sqr().sub(&Ball::from_int(2, P)).contains_zero());
        assert!((s.mid_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn complex_division() {
        let z = CBall::from_gi(Gi::new(3, 4), P);
        let w = CBall::from_gi(Gi::new(-1, 2), P);
        let q = z.div(&w).unwrap();
        assert!(q.mul(&w).sub(&z).contains_zero());
        let (g, err) = CBall::from_gi(Gi::new(1, 2), P).round_to_gaussian();
        assert_eq!(g, GaussianInteger::new(1, 2));
        assert!(err.is_zero());
    }

    #[test]
    fn rounding_negative_halves() {
        let x = Ball::from_f64(-2.75, P);
        assert_eq!(x.round_to_integer().0, BigInt::from(-3));
        let x = Ball::from_f64(-2.25, P);
        assert_eq!(x.round_to_integer().0, BigInt::from(-2));
    }
}
