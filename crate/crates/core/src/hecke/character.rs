//! The Grössencharacter of `y² = x³ − Dx` over `ℚ(i)`.
//!
//! For a primary prime `π` not dividing `2D` the character is a quartic
//! symbol twist `ψ((π)) = χ(π)^e·π` with `χ(π) = (D/π)₄`. The exponent `e` is
//! not taken on faith: it is calibrated against point counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::quotient::{factor_gaussian, is_prime_u64, pow_mod_u64, split_prime, ResidueSystem};
use crate::gauss::{CurveContext, GaussianInteger, Gi};

/// Quartic residue symbol `(a/π)₄`, the unit congruent to `a^((Nπ−1)/4)`
/// modulo `π`.
pub fn quartic_symbol(a: &GaussianInteger, pi: &GaussianInteger) -> Result<Gi> {
    quartic_symbol_small(a.to_small()?, pi.to_small()?)
}

pub(crate) fn quartic_symbol_small(a: Gi, pi: Gi) -> Result<Gi> {
    let n = pi.norm();
    if n % 2 == 0 {
        return Err(Error::EvenNormPrime);
    }
    let r = a.pow_mod(((n - 1) / 4) as u128, pi);
    UNITS_IN_ORDER
        .iter()
        .copied()
        .find(|&u| pi.divides(r.sub(u)))
        .ok_or(Error::NotCoprime)
}

const UNITS_IN_ORDER: [Gi; 4] = crate::gauss::gaussian::UNITS;

/// Number of points on `y² = x³ − Dx` over `𝔽_q`, including infinity.
pub fn point_count(d: i64, q: u64) -> u64 {
    let dm = d.rem_euclid(q as i64) as u64;
    let half = (q - 1) / 2;
    let mut count = 1u64;
    for x in 0..q {
        let rhs = (x * x % q * x % q + q * q - dm * x % q) % q;
        count += match rhs {
            0 => 1,
            _ if pow_mod_u64(rhs, half, q) == 1 => 2,
            _ => 0,
        };
    }
    count
}

/// `a_q = q + 1 − #E(𝔽_q)`.
pub fn trace_of_frobenius(d: i64, q: u64) -> i64 {
    q as i64 + 1 - point_count(d, q) as i64
}

/// The calibrated Grössencharacter of a curve, with a lookup table for
/// `ε(x) = ψ((x))/x` on `(ℤ[i]/f)^×`.
#[derive(Clone, Debug)]
pub struct HeckeCharacter {
    pub curve: CurveContext,
    /// `ψ((π)) = (D/π)₄^twist · π` for primary `π`.
    pub twist: u8,
    residues: ResidueSystem,
    /// Index into `UNITS` per residue class mod `f`, `u8::MAX` for non-units.
    epsilon: Vec<u8>,
}

/// Persisted calibration record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Calibration {
    pub d: i64,
    pub twist: u8,
    pub primes_checked: Vec<u64>,
}

fn psi_prime_with(d: i64, twist: u8, pi: Gi) -> Result<Gi> {
    if pi == Gi::new(1, 1) {
        return Err(Error::NotCoprimeToConductor);
    }
    let (_, primary) = pi.primary_decomposition().ok_or(Error::EvenNormPrime)?;
    let chi = quartic_symbol_small(Gi::new(d, 0), primary).map_err(|_| Error::NotCoprimeToConductor)?;
    Ok(chi.pow(twist as u64).mul(primary))
}

/// Split primes `q ≡ 1 mod 4`, good for the curve, below `bound`.
fn good_split_primes(d: i64, bound: u64) -> impl Iterator<Item = u64> {
    (5..bound).filter(move |&q| q % 4 == 1 && is_prime_u64(q) && !d.unsigned_abs().is_multiple_of(q))
}

impl HeckeCharacter {
    /// Finds the twist exponent reproducing `a_q` at the good split primes
    /// below 200 and builds the `ε` table.
    pub fn calibrate(curve: &CurveContext) -> Result<Self> {
        let primes: Vec<u64> = good_split_primes(curve.d, 200).collect();
        let twist = (0..4u8)
            .find(|&e| {
                primes.iter().all(|&q| {
                    let pi = split_prime(q);
                    let psi = psi_prime_with(curve.d, e, pi).expect("good prime");
                    2 * psi.re == trace_of_frobenius(curve.d, q)
                })
            })
            .ok_or(Error::SignUncalibrated(curve.d))?;
        Self::with_twist(curve, twist)
    }

    pub fn with_twist(curve: &CurveContext, twist: u8) -> Result<Self> {
        let residues = ResidueSystem::new(curve.f.to_small()?)?;
        let mut chi = HeckeCharacter { curve: curve.clone(), twist, residues, epsilon: vec![] };
        let modulus = chi.residues.modulus();
        let table = (0..chi.residues.size())
            .map(|k| {
                let x = chi.residues.from_index(k);
                if !chi.residues.is_unit(x) {
                    return Ok(u8::MAX);
                }
                let psi = chi.psi_by_factoring(x)?;
                // ε(x)·x ≡ ψ((x)) mod f and ε(x) is a unit
                UNITS_IN_ORDER
                    .iter()
                    .position(|&u| modulus.divides(u.mul(x).sub(psi)))
                    .map(|i| i as u8)
                    .ok_or(Error::ConductorMismatch(x.to_string()))
            })
            .collect::<Result<Vec<u8>>>()?;
        chi.epsilon = table;
        Ok(chi)
    }

    pub fn calibration(&self) -> Calibration {
        Calibration {
            d: self.curve.d,
            twist: self.twist,
            primes_checked: good_split_primes(self.curve.d, 200).collect(),
        }
    }

    /// `ψ((π))` for a prime `π` coprime to `f`.
    pub fn psi_prime(&self, pi: Gi) -> Result<Gi> {
        if self.residues.primes().iter().any(|&p| p.divides(pi)) {
            return Err(Error::NotCoprimeToConductor);
        }
        psi_prime_with(self.curve.d, self.twist, pi)
    }

    fn psi_by_factoring(&self, x: Gi) -> Result<Gi> {
        let (_, factors) = factor_gaussian(x)?;
        factors
            .into_iter()
            .try_fold(Gi::ONE, |acc, (pi, e)| Ok(acc.mul(self.psi_prime(pi)?.pow(e as u64))))
    }

    /// `ε(x) = ψ((x))/x` for `x` coprime to `f`; depends only on `x mod f`.
    pub fn epsilon(&self, x: Gi) -> Result<Gi> {
        match self.epsilon[self.residues.index(x)] {
            u8::MAX => Err(Error::NotCoprimeToConductor),
            i => Ok(UNITS_IN_ORDER[i as usize]),
        }
    }

    /// `ψ((α))`, the distinguished generator of the ideal `(α)`.
    pub fn grossencharacter(&self, alpha: &GaussianInteger) -> Result<GaussianInteger> {
        let a = alpha.to_small()?;
        Ok(self.epsilon(a)?.mul(a).into())
    }

    pub fn psi(&self, a: Gi) -> Result<Gi> {
        Ok(self.epsilon(a)?.mul(a))
    }

    /// Multiplicative-factorisation route to `ψ((α))`, independent of the
    /// residue table.
    pub fn psi_factored(&self, a: Gi) -> Result<Gi> {
        if !self.residues.is_unit(a) {
            return Err(Error::NotCoprimeToConductor);
        }
        self.psi_by_factoring(a)
    }

    pub fn residues(&self) -> &ResidueSystem {
        &self.residues
    }

    /// The residues `x ∈ (ℤ[i]/f)^×` with `ψ((x)) ≡ x mod f`, in canonical
    /// order. These index the conjugates of `℘(Ω∞/f)` over `K`.
    pub fn kernel(&self) -> Vec<Gi> {
        (0..self.residues.size())
            .filter(|&k| self.epsilon[k] == 0)
            .map(|k| self.residues.from_index(k))
            .collect()
    }

    /// Checks `a_q = ψ(π) + ψ(π̄)` for good split `q` and `#E(𝔽_q) = q + 1`
    /// for good inert `q`, for every odd prime `q < q_max`.
    pub fn ap_validate(&self, q_max: u64) -> Result<ApReport> {
        let d = self.curve.d;
        let mut rows = vec![];
        for q in (3..q_max).filter(|&q| is_prime_u64(q) && self.curve.good_at(q)) {
            let a_q = trace_of_frobenius(d, q);
            let predicted = if q % 4 == 3 {
                0
            } else {
                let pi = split_prime(q);
                self.psi_prime(pi)?.add(self.psi_prime(pi.conj())?).re
            };
            if predicted != a_q {
                return Err(Error::CharacterMismatch { q, expected: a_q, got: predicted });
            }
            rows.push((q, a_q));
        }
        Ok(ApReport { d, q_max, checked: rows })
    }
}

/// Result of [`HeckeCharacter::ap_validate`]: `(q, a_q)` for every checked prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApReport {
    pub d: i64,
    pub q_max: u64,
    pub checked: Vec<(u64, i64)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::make_curve_context;
    use crate::gauss::SUPPORTED_D;
    use rand::{Rng, SeedableRng};

    #[test]
    fn quartic_symbol_examples() {
        let pi = GaussianInteger::new(2, 1);
        assert_eq!(quartic_symbol(&GaussianInteger::from_int(1), &pi).unwrap(), Gi::ONE);
        assert_eq!(quartic_symbol(&GaussianInteger::i(), &pi).unwrap(), Gi::I);
        assert_eq!(quartic_symbol(&GaussianInteger::new(4, 2), &pi), Err(Error::NotCoprime));
        assert_eq!(quartic_symbol(&GaussianInteger::from_int(3), &GaussianInteger::new(1, 1)), Err(Error::EvenNormPrime));
    }

    #[test]
    fn quartic_symbol_is_multiplicative() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let pi = split_prime(97);
        for _ in 0..100 {
            let a = Gi::new(rng.gen_range(-500..500), rng.gen_range(-500..500));
            let b = Gi::new(rng.gen_range(-500..500), rng.gen_range(-500..500));
            if pi.divides(a) || pi.divides(b) {
                continue;
            }
            let ab = quartic_symbol_small(a.mul(b), pi).unwrap();
            assert_eq!(ab, quartic_symbol_small(a, pi).unwrap().mul(quartic_symbol_small(b, pi).unwrap()));
        }
    }

    #[test]
    fn point_counts() {
        assert_eq!(point_count(17, 5), 10);
        assert_eq!(point_count(-14, 5), 8);
        assert_eq!(point_count(17, 7), 8);
    }

    #[test]
    fn psi_at_five() {
        let chi = HeckeCharacter::calibrate(&make_curve_context(17).unwrap()).unwrap();
        let psi = chi.psi_prime(Gi::new(2, 1)).unwrap();
        assert!(psi == Gi::new(-2, 1) || psi == Gi::new(-2, -1), "{psi}");
        let chi = HeckeCharacter::calibrate(&make_curve_context(-14).unwrap()).unwrap();
        let psi = chi.psi_prime(Gi::new(2, 1)).unwrap();
        assert!(psi == Gi::new(-1, 2) || psi == Gi::new(-1, -2), "{psi}");
    }

    #[test]
    fn validates_against_point_counts_for_all_curves() {
        for d in SUPPORTED_D {
            let chi = HeckeCharacter::calibrate(&make_curve_context(d).unwrap()).unwrap();
            let report = chi.ap_validate(200).unwrap();
            assert!(report.checked.len() > 30);
        }
    }

    #[test]
    fn trivial_on_one_mod_f() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for d in SUPPORTED_D {
            let c = make_curve_context(d).unwrap();
            let chi = HeckeCharacter::calibrate(&c).unwrap();
            let f = c.f.to_small().unwrap();
            for _ in 0..50 {
                let k = Gi::new(rng.gen_range(-40..40), rng.gen_range(-40..40));
                let alpha = Gi::ONE.add(f.mul(k));
                assert_eq!(chi.psi_factored(alpha).unwrap(), alpha, "D={d}, α={alpha}");
            }
        }
    }

    #[test]
    fn multiplicative_and_norm_preserving() {
        let c = make_curve_context(-39).unwrap();
        let chi = HeckeCharacter::calibrate(&c).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let mut n = 0;
        while n < 200 {
            let a = Gi::new(rng.gen_range(-300..300), rng.gen_range(-300..300));
            let b = Gi::new(rng.gen_range(-300..300), rng.gen_range(-300..300));
            let (Ok(pa), Ok(pb)) = (chi.psi(a), chi.psi(b)) else { continue };
            assert_eq!(pa.norm(), a.norm());
            assert_eq!(chi.psi(a.mul(b)).unwrap(), pa.mul(pb));
            assert_eq!(chi.psi_factored(a).unwrap(), pa);
            n += 1;
        }
    }

    #[test]
    fn kernel_has_index_four() {
        for d in [17, -14] {
            let c = make_curve_context(d).unwrap();
            let chi = HeckeCharacter::calibrate(&c).unwrap();
            let phi = crate::gauss::euler_phi(&c.f).unwrap() as usize;
            assert_eq!(chi.kernel().len(), phi / 4);
        }
    }
}
