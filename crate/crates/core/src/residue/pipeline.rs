//! `c_p⁺ · p^(−g) mod p` from the minimal polynomial of `ρ`:
//! `c_p⁺ = ±Tr(A_{(p−3)/2}(ρ)) / (β^p (p−1)!)`, evaluated modulo `p^(g+2)`
//! through both embeddings `i ↦ ±ι` of `ℤ[i]`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::analytic::MinimalPolynomial;
use crate::error::{Error, Result};
use crate::gauss::modular::mod_inverse;
use crate::gauss::quotient::is_prime_u64;
use crate::gauss::{reduce_gaussian, CurveContext, ResidueRing};
use crate::hecke::{exact_cp, ExactCp, HeckeCharacter};
use crate::katz::ExactTraces;
use crate::poly::{a_poly, DensePolynomial, ModRing, ModStepper, ModU64};
use crate::residue::newton::{newton_power_sums, trace_of};

/// Largest prime used for automatic sign calibration.
pub const CALIBRATION_BOUND: u64 = 50;

/// What the valuation of `c_p⁺` says about the `p`-part of Sha.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    ShaTrivial,
    ShaFinite,
    Indeterminate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::ShaTrivial => "sha_trivial",
            Classification::ShaFinite => "sha_finite",
            Classification::Indeterminate => "indeterminate",
        })
    }
}

/// `ord_p(c_p⁺)`, exact below the working exponent `m` and a lower bound at it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub p: u64,
    pub ord: Valuation,
    /// `c_p⁺ · p^(−g) mod p`, or 0 when `ord > g`.
    pub residue: u64,
    pub classification: Classification,
    /// `Tr(A(ρ)) / β^p` has vanishing imaginary part modulo `pᵐ`.
    pub imag_check: bool,
    /// Both square roots of −1 give the same valuation and residue.
    pub root_swap_check: bool,
}

/// Rejects primes the trace formula does not cover.
pub fn check_prime(curve: &CurveContext, p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::BadPrime { p, reason: "not prime" });
    }
    if p % 4 != 1 {
        return Err(Error::BadPrime { p, reason: "not congruent to 1 mod 4" });
    }
    if curve.d.unsigned_abs().is_multiple_of(p) {
        return Err(Error::BadPrime { p, reason: "divides 2D" });
    }
    Ok(())
}

/// `Tr(A(ρ)) / (β^p (p−1)!) mod pᵐ` under `i ↦ ι` and `i ↦ −ι`, before the sign.
struct Quotients {
    ring: ResidueRing,
    plus: BigUint,
    minus: BigUint,
}

fn reduce_poly_u64(h: &MinimalPolynomial, ring: &ResidueRing, small: ModU64) -> DensePolynomial<ModU64> {
    let c = h.coeffs.iter().map(|c| reduce_gaussian(c, ring).value.to_u64().expect("reduced")).collect();
    DensePolynomial::new(small, c)
}

fn reduce_poly_big(h: &MinimalPolynomial, ring: &ResidueRing, big: &ModRing) -> DensePolynomial<ModRing> {
    DensePolynomial::new(big.clone(), h.coeffs.iter().map(|c| reduce_gaussian(c, ring).value).collect())
}

/// `Tr(A_{(p−3)/2}(ρ)) mod pᵐ` for both embeddings.
fn traces(curve: &CurveContext, h: &MinimalPolynomial, ring: &ResidueRing) -> Result<[BigUint; 2]> {
    let p = ring.p as usize;
    let n = (p - 3) / 2;
    let rings = [ring.clone(), ring.swapped()];
    let mut out = [BigUint::zero(), BigUint::zero()];
    match ModU64::prime_power(ring.p, ring.m).filter(|r| r.modulus < 1 << 62) {
        Some(small) => {
            let mut a = ModStepper::new(curve.d, small);
            a.advance_to(n);
            for (slot, r) in out.iter_mut().zip(&rings) {
                let sums = newton_power_sums(&reduce_poly_u64(h, r, small), p)?;
                *slot = BigUint::from(a.trace(&sums.sums));
            }
        }
        None => {
            let big = ModRing::new(ring.modulus.clone());
            let a = a_poly(n, curve.d, big.clone());
            for (slot, r) in out.iter_mut().zip(&rings) {
                let sums = newton_power_sums(&reduce_poly_big(h, r, &big), p)?;
                *slot = trace_of(&a, &sums)?;
            }
        }
    }
    Ok(out)
}

fn quotients(curve: &CurveContext, h: &MinimalPolynomial, p: u64) -> Result<Quotients> {
    check_prime(curve, p)?;
    if h.d != curve.d {
        return Err(Error::PolynomialMismatch { expected: curve.d, got: h.d });
    }
    let ring = ResidueRing::new(p, curve.modulus_exponent())?;
    let q = &ring.modulus;
    let fact = (1..p).fold(BigUint::one(), |acc, k| acc * k % q);
    let [t_plus, t_minus] = traces(curve, h, &ring)?;
    let divide = |t: BigUint, r: &ResidueRing| {
        let beta = reduce_gaussian(&curve.beta, r).value.modpow(&BigUint::from(p), q);
        let unit = mod_inverse(&(beta * &fact % q), q).expect("β and (p−1)! are units mod p");
        t * unit % q
    };
    let plus = divide(t_plus, &ring);
    let minus = divide(t_minus, &ring.swapped());
    Ok(Quotients { ring, plus, minus })
}

fn apply_sign(v: &BigUint, sign: i8, q: &BigUint) -> BigUint {
    if sign < 0 && !v.is_zero() {
        q - v
    } else {
        v.clone()
    }
}

/// Valuation and residue of a value known modulo `p^m`.
fn valuation_and_residue(v: &BigUint, p: u64, m: u32, g: u32) -> (Valuation, u64) {
    if v.is_zero() {
        return (Valuation::AtLeast(m), 0);
    }
    let mut x = v.clone();
    let mut k = 0;
    while (&x % p).is_zero() {
        x /= p;
        k += 1;
    }
    let residue = if k == g { (x % p).to_u64().expect("below p") } else { 0 };
    (Valuation::Exact(k), residue)
}

fn classify(ord: Valuation, g: u32) -> Classification {
    match ord {
        Valuation::Exact(k) if k == g => Classification::ShaTrivial,
        Valuation::Exact(k) if k == g + 1 => Classification::ShaFinite,
        _ => Classification::Indeterminate,
    }
}

/// `c_p⁺ · p^(−g) mod p` for a calibrated curve.
pub fn cp_residue(curve: &CurveContext, h: &MinimalPolynomial, p: u64) -> Result<ResidueReport> {
    let sign = curve.sign.ok_or(Error::SignUncalibrated(curve.d))?;
    let qs = quotients(curve, h, p)?;
    let q = &qs.ring.modulus;
    let (g, m) = (curve.rank, qs.ring.m);
    let (ord, residue) = valuation_and_residue(&apply_sign(&qs.plus, sign, q), p, m, g);
    let swapped = valuation_and_residue(&apply_sign(&qs.minus, sign, q), p, m, g);
    if let Valuation::Exact(k) = ord {
        if k < g {
            return Err(Error::MainConjectureViolation { p, ord: k, rank: g });
        }
    }
    // imaginary part (v₊ − v₋)/(2ι) of the Gaussian quotient
    let two_root_inv = mod_inverse(&((&qs.ring.root << 1u32) % q), q).expect("unit");
    let imag = (&qs.plus + q - &qs.minus) % q * two_root_inv % q;
    Ok(ResidueReport {
        p,
        ord,
        residue,
        classification: classify(ord, g),
        imag_check: imag.is_zero(),
        root_swap_check: swapped == (ord, residue),
    })
}

/// Signed `c_p⁺ mod p^(g+2)`, with the modulus.
pub fn cp_mod_prime_power(curve: &CurveContext, h: &MinimalPolynomial, p: u64) -> Result<(BigUint, BigUint)> {
    let sign = curve.sign.ok_or(Error::SignUncalibrated(curve.d))?;
    let qs = quotients(curve, h, p)?;
    Ok((apply_sign(&qs.plus, sign, &qs.ring.modulus), qs.ring.modulus))
}

/// The sign that makes the trace formula agree with exact values of `c_p⁺`.
pub fn calibrate_sign(curve: &CurveContext, h: &MinimalPolynomial, oracle: &[ExactCp]) -> Result<i8> {
    if oracle.len() < 2 {
        return Err(Error::InsufficientCalibration);
    }
    let mut first: Option<(u64, i8)> = None;
    for c in oracle {
        let qs = quotients(curve, h, c.p)?;
        let want = c.mod_prime_power(qs.ring.m);
        let sign = if qs.plus == want {
            1
        } else if apply_sign(&qs.plus, -1, &qs.ring.modulus) == want {
            -1
        } else {
            return Err(Error::OracleDisagreement { p: c.p });
        };
        match first {
            None => first = Some((c.p, sign)),
            Some((p1, s1)) if s1 != sign => return Err(Error::SignMismatch { p1, s1, p2: c.p, s2: sign }),
            Some(_) => {}
        }
    }
    Ok(first.expect("nonempty").1)
}

/// The two smallest primes usable for calibration.
pub fn calibration_primes(curve: &CurveContext) -> Vec<u64> {
    (5..=CALIBRATION_BOUND).filter(|&p| check_prime(curve, p).is_ok()).take(2).collect()
}

/// Calibrates the sign against the exact analytic values at two small primes.
pub fn calibrate(curve: &CurveContext, h: &MinimalPolynomial) -> Result<CurveContext> {
    let chi = HeckeCharacter::calibrate(curve)?;
    let oracle = calibration_primes(curve).into_iter().map(|p| exact_cp(&chi, p)).collect::<Result<Vec<_>>>()?;
    let sign = calibrate_sign(curve, h, &oracle)?;
    Ok(curve.clone().with_sign(sign))
}

/// The sign read off the exact quotient at the smallest usable prime `p ≥ 5`.
///
/// `c_p⁺` is positive there: `|L_f(ψ̄^p, p) − 1| ≤ ζ_{ℚ(i)}(p/2) − 1 < 1`.
pub fn certify_sign(curve: &CurveContext, h: &MinimalPolynomial) -> Result<i8> {
    let p = *calibration_primes(curve).first().ok_or(Error::InsufficientCalibration)?;
    let q = exact_quotient(curve, h, p)?;
    match q.numer().sign() {
        num_bigint::Sign::Plus => Ok(1),
        num_bigint::Sign::Minus => Ok(-1),
        num_bigint::Sign::NoSign => Err(Error::RecognitionFailed(f64::NAN)),
    }
}

/// The unsigned quotient `Tr(A_{(p−3)/2}(ρ)) / (β^p (p−1)!)` as an exact
/// rational, through traces over `ℤ[i]`.
pub fn exact_quotient(curve: &CurveContext, h: &MinimalPolynomial, p: u64) -> Result<BigRational> {
    check_prime(curve, p)?;
    let t = ExactTraces::new(curve, h, p)?.trace(p)?;
    let beta_p = curve.beta.pow(p);
    let num = &t * &beta_p.conj();
    if !num.im.is_zero() {
        return Err(Error::RecognitionFailed(f64::NAN));
    }
    let fact: BigInt = (1..p).map(BigInt::from).product();
    Ok(BigRational::new(num.re, beta_p.norm() * fact))
}
