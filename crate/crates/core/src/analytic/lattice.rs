//! Periods of `y² = x³ − Dx` and the lattice context shared by every
//! analytic evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::analytic::ball::{Ball, CBall, Mag};
use crate::error::{Error, Result};
use crate::gauss::curve::is_fourth_power_free;

/// `atan(1/k)` in fixed point with `w` fractional bits; returns the midpoint
/// and the number of ulps of accumulated truncation error.
fn atan_inv(k: u64, w: u32) -> (BigInt, u64) {
    let k2 = BigInt::from(k * k);
    let mut power = (BigInt::one() << w as usize) / k;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        let t = &power / (2 * j + 1);
        if j.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &k2;
        j += 1;
        terms += 1;
    }
    (sum, 2 * terms + 2)
}

/// π to `prec` bits, from Machin's formula.
pub fn pi(prec: u32) -> Ball {
    let w = prec + 32;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    let mid = a * 16 - b * 4;
    let err = Mag::from_f64((16 * ea + 4 * eb) as f64).mul_2exp(-(w as i64));
    Ball::from_parts(mid, Mag::ZERO, w).set_prec(prec).with_rad(err)
}

/// Arithmetic–geometric mean of two positive balls.
pub fn agm(a: &Ball, b: &Ball) -> Ball {
    let (mut a, mut b) = (a.clone(), b.clone());
    let target = Mag::pow2(-(a.prec() as i64));
    for _ in 0..64 {
        let gap = a.sub(&b).abs_upper();
        if gap.lt(target) {
            break;
        }
        let next_a = a.add(&b).mul_2exp(-1);
        b = a.mul(&b).sqrt().expect("AGM iterates stay positive");
        a = next_a;
    }
    // the limit lies between the two iterates
    let gap = a.sub(&b).abs_upper();
    a.add(&b).mul_2exp(-1).with_rad(gap)
}

/// The lemniscate constant `Ω = π / AGM(1, √2)`, the least positive real
/// period of `y² = x³ − x`.
pub fn lemniscate(prec: u32) -> Ball {
    let w = prec + 16;
    let root2 = Ball::from_int(2, w).sqrt().expect("positive");
    let m = agm(&Ball::from_int(1, w), &root2);
    pi(w).div(&m).expect("AGM is positive").set_prec(prec)
}

fn fourth_root(x: &Ball) -> Ball {
    x.sqrt().and_then(|s| s.sqrt()).expect("positive argument")
}

/// Periods and evaluation data for the lattice `ℒ = Ω∞·ℤ[i]` of
/// `y² = x³ − Dx`, normalised so that `℘′² = 4℘³ − 4D℘`.
#[derive(Clone, Debug)]
pub struct LatticeContext {
    pub d: i64,
    pub precision_bits: u32,
    /// Internal fixed-point precision including guard bits.
    pub work_bits: u32,
    /// The lemniscate constant.
    pub omega: Ball,
    /// The least positive real period `Ω∞⁺`.
    pub omega_plus: Ball,
    /// Lattice generator: real for `D > 0`, `Ω∞⁺/(1+i)` for `D < 0`.
    pub omega_inf: CBall,
    /// Number of argument halvings before the Laurent series.
    pub halvings: u32,
    /// `c_{2j}` for `j = 1..=J`, the nonzero Laurent coefficients.
    pub(crate) laurent: Vec<Ball>,
    /// `(4j − 2)·c_{2j}`.
    pub(crate) laurent_deriv: Vec<Ball>,
    /// Upper bound on `|Ω∞|^(−1)`.
    pub(crate) inv_omega_abs: Mag,
}

/// Exact Laurent coefficients `c_k`, `k = 2..=kmax`, of
/// `℘(z) = z^(−2) + Σ c_k z^(2k−2)` for `g₂ = 4D`, `g₃ = 0`.
pub fn laurent_coefficients(d: i64, kmax: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); kmax + 1];
    if kmax >= 2 {
        c[2] = BigRational::new(d.into(), 5.into());
    }
    for k in 4..=kmax {
        if k % 2 == 1 {
            continue;
        }
        let s = (2..=k - 2).fold(BigRational::zero(), |acc, m| acc + &c[m] * &c[k - m]);
        c[k] = s * BigRational::new(3.into(), BigInt::from((2 * k + 1) * (k - 3)));
    }
    c
}

/// Halving count and number of nonzero Laurent terms for a target precision.
pub(crate) fn series_shape(prec: u32) -> (u32, usize) {
    let h = ((prec as f64 / 20.0).sqrt().ceil() as u32).max(3);
    let j = ((prec as f64 + 32.0) / (4.0 * (h as f64 + 0.5))).ceil() as usize + 1;
    (h, j)
}

/// Periods of `y² = x³ − Dx` to `precision_bits` bits.
pub fn compute_period(d: i64, precision_bits: u32) -> Result<LatticeContext> {
    if !is_fourth_power_free(d) {
        return Err(Error::BadD(d));
    }
    let precision_bits = precision_bits.max(64);
    let (halvings, terms) = series_shape(precision_bits);
    let work_bits = precision_bits + 8 * halvings + 64 + (d.unsigned_abs() as f64).log2().ceil() as u32 * 2;

    let omega = lemniscate(work_bits);
    let abs_d = Ball::from_int(d.unsigned_abs(), work_bits);
    let (omega_plus, omega_inf) = if d > 0 {
        let w = omega.div(&fourth_root(&abs_d)).expect("positive");
        (w.clone(), CBall::from_real(w))
    } else {
        let w = omega.div(&fourth_root(&abs_d.mul_2exp(-2))).expect("positive");
        // Ω∞⁺/(1+i) = Ω∞⁺·(1−i)/2
        let half = w.mul_2exp(-1);
        (w, CBall::new(half.clone(), half.neg()))
    };
    let inv_omega_abs = Mag::pow2(0).div(omega_inf.abs_lower());

    let exact = laurent_coefficients(d, 2 * terms);
    let laurent: Vec<Ball> = (1..=terms).map(|j| Ball::from_rational(&exact[2 * j], work_bits)).collect();
    let laurent_deriv = (1..=terms)
        .map(|j| {
            let q = &exact[2 * j] * BigRational::from_integer(BigInt::from(4 * j - 2));
            Ball::from_rational(&q, work_bits)
        })
        .collect();

    Ok(LatticeContext {
        d,
        precision_bits,
        work_bits,
        omega,
        omega_plus,
        omega_inf,
        halvings,
        laurent,
        laurent_deriv,
        inv_omega_abs,
    })
}

impl LatticeContext {
    /// A context for the same curve at a different precision.
    pub fn with_precision(&self, precision_bits: u32) -> LatticeContext {
        compute_period(self.d, precision_bits).expect("D was already validated")
    }

    /// `Ω∞⁺ / Ω∞`: `1` for `D > 0`, `1+i` for `D < 0`.
    pub fn period_ratio(&self) -> (i64, i64) {
        if self.d > 0 {
            (1, 0)
        } else {
            (1, 1)
        }
    }
}

/// Decimal expansion of the midpoint, truncated to `digits` places.
pub fn to_decimal_string(x: &Ball, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let n = (x.mid_raw() * &scale) >> x.prec() as usize;
    let (q, r) = n.div_mod_floor(&scale);
    format!("{q}.{:0>width$}", r.to_string(), width = digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(256);
        assert_eq!(
            to_decimal_string(&p, 60),
            "3.141592653589793238462643383279502884197169399375105820974944"
        );
        assert!(p.rad().log2() < -250.0);
    }

    #[test]
    fn lemniscate_constant() {
        let w = lemniscate(200);
        assert_eq!(to_decimal_string(&w, 28), "2.6220575542921198104648395898");
    }

    #[test]
    fn scaled_periods() {
        let c = compute_period(1, 128).unwrap();
        assert!(to_decimal_string(&c.omega_plus, 8).starts_with("2.622057"));
        let c = compute_period(17, 128).unwrap();
        assert!(to_decimal_string(&c.omega_plus, 12).starts_with("1.29130844092"));
        let c = compute_period(-14, 128).unwrap();
        assert!(to_decimal_string(&c.omega_plus, 12).starts_with("1.91701366719"));
        // Ω∞ = Ω∞⁺/(1+i) has equal real and negated imaginary parts
        assert!(c.omega_inf.re.add(&c.omega_inf.im).contains_zero());
    }

    #[test]
    fn relative_error_is_small() {
        let c = compute_period(-39, 300).unwrap();
        let rel = c.omega_plus.rad().div(c.omega_plus.abs_lower());
        assert!(rel.log2() < -(300.0 - 8.0));
    }

    #[test]
    fn rejects_bad_d() {
        assert!(matches!(compute_period(0, 64), Err(Error::BadD(0))));
        assert!(matches!(compute_period(32, 64), Err(Error::BadD(32))));
    }

    #[test]
    fn laurent_low_order() {
        let c = laurent_coefficients(17, 8);
        assert_eq!(c[2], BigRational::new(17.into(), 5.into()));
        assert_eq!(c[4], BigRational::new((17 * 17).into(), 75.into()));
        assert!(c[3].is_zero() && c[5].is_zero());
    }
}
