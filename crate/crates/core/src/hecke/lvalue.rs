//! Values of `L_f(ψ̄ⁿ, n)`: a direct Hecke sum with an explicit tail bound,
//! and the closed form through odd derivatives of `℘` at the `f`-division
//! points, which is precise enough to recognise `c_p⁺` exactly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::ball::{Ball, CBall};
use crate::analytic::lattice::compute_period;
use crate::analytic::traces::wp_derivative_trace;
use crate::error::{Error, Result};
use crate::gauss::{GaussianInteger, Gi};
use crate::hecke::HeckeCharacter;

/// A directly summed L-value with a rigorous truncation bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LfValue {
    pub re: f64,
    pub im: f64,
    /// Bound on the omitted tail plus floating-point accumulation error.
    pub error_bound: f64,
    pub norm_bound: u64,
}

/// Bound for `Σ_{N𝔞 > X} N𝔞^(−n/2)` over ideals of `ℤ[i]`.
pub fn tail_bound(x: u64, n: u32) -> f64 {
    let e = 1.0 - n as f64 / 2.0;
    4.0 * (x as f64).powf(e) / (1.0 - 2f64.powf(e))
}

/// Generators `a + bi` with `a > 0`, `b ≥ 0` and norm at most `x`: one per
/// nonzero ideal.
pub fn ideals_up_to(x: u64) -> impl Iterator<Item = Gi> {
    let r = (x as f64).sqrt() as i64 + 1;
    (1..=r).flat_map(move |a| {
        (0..=r).map(move |b| Gi::new(a, b)).filter(move |g| g.norm() as u64 <= x)
    })
}

/// `Σ_{(𝔞, f) = 1, N𝔞 ≤ X} ψ̄(𝔞)ⁿ / N𝔞ⁿ`, with `X` chosen so the tail is
/// below `2^(−bits)`; fails if that needs more than `budget` norms.
pub fn lf_value(chi: &HeckeCharacter, n: u32, bits: u32, budget: u64) -> Result<LfValue> {
    assert!(n >= 3);
    let target = 2f64.powi(-(bits as i32));
    let mut x = 16u64;
    while tail_bound(x, n) > target {
        x = x.checked_mul(2).ok_or(Error::PrecisionUnattainable(u64::MAX))?;
        if x > budget {
            return Err(Error::PrecisionUnattainable(x));
        }
    }
    Ok(lf_truncated(chi, n, x))
}

/// The truncated sum at an explicit norm bound.
pub fn lf_truncated(chi: &HeckeCharacter, n: u32, x: u64) -> LfValue {
    let r = (x as f64).sqrt() as i64 + 1;
    let (re, im, count) = (1..=r)
        .into_par_iter()
        .map(|a| {
            let mut acc = (0.0f64, 0.0f64, 0u64);
            for b in 0..=r {
                let g = Gi::new(a, b);
                let nm = g.norm() as u64;
                if nm > x {
                    break;
                }
                let Ok(psi) = chi.psi(g) else { continue };
                // ψ̄(𝔞)/N𝔞 = 1/ψ(𝔞), a point on the circle of radius N^(−1/2)
                let (u, v) = (psi.re as f64 / nm as f64, -(psi.im as f64) / nm as f64);
                let (mut pr, mut pi) = (1.0, 0.0);
                for _ in 0..n {
                    (pr, pi) = (pr * u - pi * v, pr * v + pi * u);
                }
                acc.0 += pr;
                acc.1 += pi;
                acc.2 += 1;
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0, 0.0, 0u64), |s, t| (s.0 + t.0, s.1 + t.1, s.2 + t.2));
    let rounding = count as f64 * (4 * n) as f64 * f64::EPSILON;
    LfValue { re, im, error_bound: tail_bound(x, n) + rounding, norm_bound: x }
}

/// `L_f(ψ̄ⁿ, n)` from the closed form
/// `−f^(−n)·Ω∞ⁿ/(n−1)!·Σ_{x ∈ ker ε} ℘^{(n−2)}(xΩ∞/f)` for odd `n ≥ 3`.
pub fn lf_closed_form(chi: &HeckeCharacter, n: u32, precision_bits: u32) -> Result<CBall> {
    assert!(n >= 3 && n % 2 == 1);
    let ctx = compute_period(chi.curve.d, precision_bits)?;
    let f = chi.curve.f.to_small()?;
    let sum = wp_derivative_trace(chi, &ctx, f, (n as usize - 3) / 2)?;
    let prec = sum.prec();
    let omega = ctx.omega_inf.set_prec(prec);
    let mut scale = CBall::from_real(Ball::from_int(1, prec));
    for _ in 0..n {
        scale = scale.mul(&omega).div(&CBall::from_gi(f, prec)).expect("f ≠ 0");
    }
    let fact: BigInt = (1..n as u64).product();
    Ok(sum.mul(&scale).div_int(&fact).neg())
}

/// An exactly recognised `c_p⁺ = T / (β^p (p−1)!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCp {
    pub p: u64,
    /// `T = β^p (p−1)! c_p⁺`.
    pub t: GaussianInteger,
    /// `c_p⁺` as an exact rational.
    pub value: BigRational,
    /// `log₂` of the rounding residual of `T`.
    pub residual_log2: f64,
    pub precision_bits: u32,
}

impl ExactCp {
    /// `ord_p(c_p⁺)`, or `None` when `c_p⁺ = 0`.
    pub fn ord(&self) -> Option<u32> {
        let p = BigInt::from(self.p);
        if self.value.is_zero() {
            return None;
        }
        let mut num = self.value.numer().abs();
        let mut k = 0;
        while (&num % &p).is_zero() {
            num /= &p;
            k += 1;
        }
        Some(k)
    }

    /// `c_p⁺·p^(−g) mod p`, or 0 if the valuation exceeds `g`.
    pub fn residue(&self, g: u32) -> u64 {
        let p = BigInt::from(self.p);
        if self.ord().is_none_or(|o| o > g) {
            return 0;
        }
        let num = self.value.numer() / p.pow(g);
        let den = self.value.denom();
        let m = num_integer::Integer::mod_floor(&(num * mod_inv(den, &p)), &p);
        u64::try_from(m).expect("reduced")
    }
}

impl ExactCp {
    /// `c_p⁺ mod pᵐ`; the denominator is a unit because `p ∤ 2D·(p−1)!`.
    pub fn mod_prime_power(&self, m: u32) -> BigUint {
        let q = BigInt::from(self.p).pow(m);
        let v = self.value.numer() * mod_inv(self.value.denom(), &q);
        num_integer::Integer::mod_floor(&v, &q).to_biguint().expect("reduced")
    }
}

fn mod_inv(a: &BigInt, p: &BigInt) -> BigInt {
    let e = num_integer::Integer::extended_gcd(a, p);
    assert!(e.gcd.is_one(), "denominator not a unit");
    e.x
}

/// `c_p⁺` recognised from the closed form of `L_f`.
///
/// `β^p (p−1)! c_p⁺ = −(1+i)^(−p)·Σ_{x ∈ ker ε} ℘^{(p−2)}(xΩ∞/f)` is a
/// Gaussian integer; the sum is computed with enough bits that rounding is
/// unambiguous.
pub fn exact_cp(chi: &HeckeCharacter, p: u64) -> Result<ExactCp> {
    if p % 4 != 1 || chi.curve.d.unsigned_abs().is_multiple_of(p) {
        return Err(Error::BadPrime { p, reason: "need p ≡ 1 mod 4 and p ∤ 2D" });
    }
    let beta = chi.curve.beta.to_small()?;
    let log_beta = (beta.norm() as f64).log2() / 2.0;
    let mut bits = (p as f64 * (log_beta + (p as f64).log2())) as u32 + 128;
    for _ in 0..4 {
        let ctx = compute_period(chi.curve.d, bits)?;
        let sum = wp_derivative_trace(chi, &ctx, chi.curve.f.to_small()?, (p as usize - 3) / 2)?;
        // −(1+i)^(−p) = −(1−i)^p / 2^p = −(−i)^((p−1)/2)·(1−i) / 2^((p+1)/2)
        let unit = crate::gauss::gaussian::UNITS[(3 * ((p - 1) / 2) % 4) as usize];
        let t_ball = sum.mul_gi(unit.mul(Gi::new(1, -1))).mul_2exp(-((p as i64 + 1) / 2)).neg();
        let (t, err) = t_ball.round_to_gaussian();
        if err.log2() < -32.0 {
            let value = real_quotient(&t, &GaussianInteger::from(beta).pow(p), p)?;
            return Ok(ExactCp { p, t, value, residual_log2: err.log2(), precision_bits: bits });
        }
        bits *= 2;
    }
    Err(Error::RecognitionFailed(bits as f64))
}

/// `t / (β^p (p−1)!)` as a rational; errors if the quotient is not real.
fn real_quotient(t: &GaussianInteger, beta_p: &GaussianInteger, p: u64) -> Result<BigRational> {
    let num = t * &beta_p.conj();
    if !num.im.is_zero() {
        return Err(Error::RecognitionFailed(f64::NAN));
    }
    let fact: BigInt = (1..p).map(BigInt::from).product();
    Ok(BigRational::new(num.re, beta_p.norm() * fact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::make_curve_context;

    fn chi(d: i64) -> HeckeCharacter {
        HeckeCharacter::calibrate(&make_curve_context(d).unwrap()).unwrap()
    }

    #[test]
    fn ideal_count_matches_lattice_points() {
        for x in [1u64, 10, 100, 1000, 10_000] {
            let r = (x as f64).sqrt() as i64 + 1;
            let mut points = 0;
            for a in -r..=r {
                for b in -r..=r {
                    let n = (a * a + b * b) as u64;
                    if n > 0 && n <= x {
                        points += 1;
                    }
                }
            }
            assert_eq!(ideals_up_to(x).count() * 4, points);
        }
    }

    #[test]
    fn direct_sum_is_real_and_near_one() {
        let v = lf_value(&chi(17), 5, 16, 1 << 24).unwrap();
        assert!(v.im.abs() < v.error_bound);
        assert!((v.re - 1.0).abs() <= tail_bound(1, 5));
        assert!(matches!(lf_value(&chi(17), 5, 64, 1 << 20), Err(Error::PrecisionUnattainable(_))));
    }

    #[test]
    fn closed_form_agrees_with_direct_sum() {
        for (d, n) in [(17i64, 5u32), (-14, 5), (17, 7), (82, 9)] {
            let chi = chi(d);
            let closed = lf_closed_form(&chi, n, 128).unwrap();
            let direct = lf_truncated(&chi, n, 1 << 16);
            let (re, im) = closed.mid_f64();
            assert!((re - direct.re).abs() < direct.error_bound, "D={d} n={n}: {re} vs {}", direct.re);
            assert!((im - direct.im).abs() < direct.error_bound);
        }
    }

    #[test]
    fn first_residues() {
        for (d, p, want) in [(17i64, 5u64, 2u64), (17, 13, 6), (-14, 5, 4), (-14, 13, 10), (82, 5, 3), (82, 13, 4)] {
            let chi = chi(d);
            let c = exact_cp(&chi, p).unwrap();
            let g = chi.curve.rank;
            assert!(c.ord().unwrap() >= g);
            assert_eq!(c.residue(g), want, "D={d}, p={p}");
        }
    }
}
