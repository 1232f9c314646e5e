//! Exact traces `T_n = Tr(A_{(n−3)/2}(ρ))` over `ℤ[i]` and the supersingular
//! divisibility `ord_q(T_n) ≥ ⌊nq/(q²−1)⌋ − 1` at inert primes `q`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::analytic::compute_period;
use crate::analytic::MinimalPolynomial;
use crate::error::{Error, Result};
use crate::gauss::quotient::is_prime_u64;
use crate::gauss::{CurveContext, GaussianInteger};
use crate::hecke::{lf_value, HeckeCharacter};
use crate::poly::{a_next, a_poly, DensePolynomial, GaussianIntegers, Integers};
use crate::residue::{newton_power_sums, PowerSums};

/// Largest `n` handled by exact arithmetic unless raised explicitly.
pub const DEFAULT_MAX_N: u64 = 121;

/// `⌊nq/(q²−1)⌋ − 1`; negative values are vacuous bounds.
pub fn katz_exponent(n: u64, q: u64) -> i64 {
    (n * q / (q * q - 1)) as i64 - 1
}

/// Pairs with `n ≡ 1 + q mod (q² − 1)` are not covered by the bound.
pub fn is_exempt(n: u64, q: u64) -> bool {
    n % (q * q - 1) == (1 + q) % (q * q - 1)
}

/// Power sums of `H` over `ℤ[i]`, shared by every `T_n` up to a bound.
pub struct ExactTraces {
    d: i64,
    max_n: u64,
    sums: PowerSums<GaussianIntegers>,
}

impl ExactTraces {
    pub fn new(curve: &CurveContext, h: &MinimalPolynomial, max_n: u64) -> Result<Self> {
        if h.d != curve.d {
            return Err(Error::PolynomialMismatch { expected: curve.d, got: h.d });
        }
        let hg = DensePolynomial::new(GaussianIntegers, h.coeffs.clone());
        let sums = newton_power_sums(&hg, max_n as usize)?;
        Ok(ExactTraces { d: curve.d, max_n, sums })
    }

    fn check(&self, n: u64) -> Result<()> {
        if n < 3 || n.is_multiple_of(2) || n > self.max_n {
            return Err(Error::RangeExceeded { n, max: self.max_n });
        }
        Ok(())
    }

    /// `Σ a_k s_k` for an integer polynomial `a` of degree at most `max_n`.
    fn trace_int(&self, a: &DensePolynomial<Integers>) -> GaussianInteger {
        a.coeffs.iter().zip(&self.sums.sums).fold(GaussianInteger::default(), |acc, (c, s)| {
            if c.bits() == 0 {
                acc
            } else {
                acc + GaussianInteger { re: c * &s.re, im: c * &s.im }
            }
        })
    }

    /// `T_n` for a single odd `n`.
    pub fn trace(&self, n: u64) -> Result<GaussianInteger> {
        self.check(n)?;
        Ok(self.trace_int(&a_poly(((n - 3) / 2) as usize, self.d, Integers)))
    }

    /// `T_n` for every odd `n` in `[lo, hi]`, building `A` incrementally.
    pub fn traces(&self, lo: u64, hi: u64) -> Result<Vec<(u64, GaussianInteger)>> {
        let lo = lo.max(3) | 1;
        self.check(lo)?;
        let last = if hi.is_multiple_of(2) { hi.saturating_sub(1) } else { hi };
        if last >= lo {
            self.check(last)?;
        }
        let mut a = a_poly(((lo - 3) / 2) as usize, self.d, Integers);
        let mut out = vec![];
        let mut n = lo;
        while n <= hi {
            out.push((n, self.trace_int(&a)));
            a = a_next(&a, self.d);
            n += 2;
        }
        Ok(out)
    }
}

/// `T_n` with its valuations at the tested primes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LIntegerRecord {
    pub n: u64,
    pub t: GaussianInteger,
    /// `ord_q(T_n)`, `None` when `T_n = 0`.
    pub valuations: BTreeMap<u64, Option<u64>>,
}

/// Inert primes `q ≤ q_max` (`q ≡ 3 mod 4`) at which `E` has good reduction
/// and which are prime to the conductor.
pub fn inert_good_primes(curve: &CurveContext, q_max: u64) -> Vec<u64> {
    (3..=q_max).filter(|&q| q % 4 == 3 && is_prime_u64(q) && curve.good_at(q)).collect()
}

pub fn exact_trace_integer(curve: &CurveContext, h: &MinimalPolynomial, n: u64, q_max: u64) -> Result<LIntegerRecord> {
    let traces = ExactTraces::new(curve, h, n.max(3))?;
    let t = traces.trace(n)?;
    let valuations = inert_good_primes(curve, q_max).into_iter().map(|q| (q, t.rational_valuation(&BigInt::from(q)))).collect();
    Ok(LIntegerRecord { n, t, valuations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KatzEntry {
    pub n: u64,
    pub q: u64,
    pub bound: i64,
    /// `None` when `T_n = 0`.
    pub ord: Option<u64>,
    pub exempt: bool,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KatzReport {
    pub d: i64,
    pub entries: Vec<KatzEntry>,
}

impl KatzReport {
    pub fn checked(&self) -> usize {
        self.entries.iter().filter(|e| !e.exempt).count()
    }

    pub fn exempt(&self) -> usize {
        self.entries.iter().filter(|e| e.exempt).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks every odd `n` in `[lo, hi]` against every `q` in `qs`.
pub fn katz_check(curve: &CurveContext, h: &MinimalPolynomial, lo: u64, hi: u64, qs: &[u64]) -> Result<KatzReport> {
    for &q in qs {
        if q % 4 != 3 || !is_prime_u64(q) || !curve.good_at(q) {
            return Err(Error::BadPrime { p: q, reason: "need an inert prime of good reduction" });
        }
    }
    let traces = ExactTraces::new(curve, h, hi.max(3))?;
    let mut entries = vec![];
    for (n, t) in traces.traces(lo, hi)? {
        for &q in qs {
            let bound = katz_exponent(n, q);
            let ord = t.rational_valuation(&BigInt::from(q));
            let exempt = is_exempt(n, q);
            let satisfied = ord.is_none_or(|o| o as i64 >= bound);
            if !exempt && !satisfied {
                return Err(Error::DivisibilityViolation { n, q, ord: ord.unwrap_or(0), bound });
            }
            entries.push(KatzEntry { n, q, bound, ord, exempt, satisfied });
        }
    }
    Ok(KatzReport { d: curve.d, entries })
}

/// `𝒫(p) = ∏ q^{ν_q}` over inert `q ≤ p` of good reduction, with
/// `ν_q = max(0, ⌊pq/(q²−1)⌋ − 1)`.
pub fn p_product(p: u64, curve: &CurveContext) -> BigUint {
    (3..=p)
        .filter(|&q| q % 4 == 3 && is_prime_u64(q) && curve.good_at(q))
        .map(|q| BigUint::from(q).pow(katz_exponent(p, q).max(0) as u32))
        .fold(BigUint::one(), |acc, x| acc * x)
}

/// Comparison of `sign · T_n (Ω∞⁺)ⁿ / (βⁿ (n−1)!)` with the directly
/// summed `L_f(ψ̄ⁿ, n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceValidation {
    pub n: u64,
    pub predicted: (f64, f64),
    pub direct: (f64, f64),
    pub error_bound: f64,
    pub agrees: bool,
}

/// Checks the trace formula for `L_f(ψ̄ⁿ, n)` at every odd `3 ≤ n ≤ n_max`.
pub fn validate_trace_formula(curve: &CurveContext, h: &MinimalPolynomial, n_max: u64) -> Result<Vec<TraceValidation>> {
    let sign = curve.sign.ok_or(Error::SignUncalibrated(curve.d))?;
    let chi = HeckeCharacter::calibrate(curve)?;
    let omega = compute_period(curve.d, 96)?.omega_plus.mid_f64();
    let traces = ExactTraces::new(curve, h, n_max)?;
    let mut out = vec![];
    for (n, t) in traces.traces(3, n_max)? {
        let beta_n = curve.beta.pow(n);
        let num = &t * &beta_n.conj();
        let den = beta_n.norm() * (1..n).map(BigInt::from).product::<BigInt>() * sign;
        let part = |x: &BigInt| BigRational::new(x.clone(), den.clone()).to_f64().unwrap_or(f64::NAN) * omega.powi(n as i32);
        let predicted = (part(&num.re), part(&num.im));
        let bits = if n == 3 { 8 } else { 20 };
        let direct = lf_value(&chi, n as u32, bits, 1 << 26)?;
        let err = direct.error_bound + 1e-9 * predicted.0.abs().max(1.0);
        let agrees = (predicted.0 - direct.re).abs() <= err && (predicted.1 - direct.im).abs() <= err;
        out.push(TraceValidation { n, predicted, direct: (direct.re, direct.im), error_bound: err, agrees });
    }
    Ok(out)
}
