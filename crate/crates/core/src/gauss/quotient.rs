//! The finite rings ℤ[i]/γ: canonical residues, unit groups and orbits of
//! the unit group {±1, ±i} acting by multiplication.

use crate::error::{Error, Result};
use crate::gauss::gaussian::{GaussianInteger, Gi, UNITS};

/// Factorisation of a small rational integer by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod_u64(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128 % m as u128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Square root of −1 modulo a prime `q ≡ 1 mod 4`.
pub(crate) fn sqrt_minus_one_mod(q: u64) -> u64 {
    (2..q)
        .map(|a| pow_mod_u64(a, (q - 1) / 4, q))
        .find(|&r| (r as u128 * r as u128) % q as u128 == (q - 1) as u128)
        .expect("q must be a prime congruent to 1 mod 4")
}

/// The primary Gaussian prime above a split rational prime `q ≡ 1 mod 4`
/// whose class contains `i ↦ r` for the smaller root `r`. Its conjugate is the
/// other prime above `q`.
pub(crate) fn split_prime(q: u64) -> Gi {
    let r = sqrt_minus_one_mod(q);
    let g = Gi::new(q as i64, 0).gcd(Gi::new(r as i64, 1));
    g.primary_decomposition().expect("odd prime").1
}

/// Factorisation of a nonzero Gaussian integer into primes: returns the unit
/// and a list of `(prime, exponent)`. Odd primes are returned primary; the
/// prime above 2 is returned as `1+i`.
pub fn factor_gaussian(x: Gi) -> Result<(Gi, Vec<(Gi, u32)>)> {
    if x.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let n = u64::try_from(x.norm()).map_err(|_| Error::TooLarge(x.to_string()))?;
    let mut rest = x;
    let mut factors = vec![];
    for (q, e) in factor_u64(n) {
        if q == 2 {
            let pi = Gi::new(1, 1);
            for _ in 0..e {
                rest = rest.div_exact(pi).expect("norm accounting");
            }
            factors.push((pi, e));
        } else if q % 4 == 3 {
            let pi = Gi::new(-(q as i64), 0);
            for _ in 0..e / 2 {
                rest = rest.div_exact(pi).expect("norm accounting");
            }
            factors.push((pi, e / 2));
        } else {
            let pi = split_prime(q);
            for cand in [pi, pi.conj()] {
                let mut k = 0;
                while let Some(r) = rest.div_exact(cand) {
                    rest = r;
                    k += 1;
                }
                if k > 0 {
                    factors.push((cand, k));
                }
            }
        }
    }
    debug_assert!(rest.is_unit());
    Ok((rest, factors))
}

/// Canonical residue system for ℤ[i]/γ using the Hermite normal form of the
/// lattice γ·ℤ[i]: every class has a unique representative `x + y·i` with
/// `0 ≤ x < g` and `0 ≤ y < N/g`, where `g = gcd(re γ, im γ)`.
#[derive(Clone, Debug)]
pub struct ResidueSystem {
    modulus: Gi,
    g: i64,
    h12: i64,
    h22: i64,
    primes: Vec<Gi>,
}

impl ResidueSystem {
    pub fn new(modulus: Gi) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let (a, b) = (modulus.re, modulus.im);
        let n = modulus.norm() as i64;
        // rows (a, b) and (-b, a); combine with s·a + t·(-b) = g
        let (g, s, t) = ext_gcd(a, -b);
        let (g, s, t) = if g < 0 { (-g, -s, -t) } else { (g, s, t) };
        let h22 = n / g;
        let h12 = (s * b + t * a).rem_euclid(h22);
        let primes = factor_gaussian(modulus)?.1.into_iter().map(|(p, _)| p).collect();
        Ok(ResidueSystem { modulus, g, h12, h22, primes })
    }

    pub fn modulus(&self) -> Gi {
        self.modulus
    }

    pub fn size(&self) -> usize {
        (self.g * self.h22) as usize
    }

    pub fn primes(&self) -> &[Gi] {
        &self.primes
    }

    pub fn reduce(&self, x: Gi) -> Gi {
        let k = x.re.div_euclid(self.g);
        let re = x.re - k * self.g;
        let im = (x.im - k * self.h12).rem_euclid(self.h22);
        Gi::new(re, im)
    }

    /// Index of the canonical representative in `0..size()`.
    pub fn index(&self, x: Gi) -> usize {
        let r = self.reduce(x);
        (r.re * self.h22 + r.im) as usize
    }

    pub fn from_index(&self, k: usize) -> Gi {
        let k = k as i64;
        Gi::new(k / self.h22, k % self.h22)
    }

    pub fn is_unit(&self, x: Gi) -> bool {
        self.primes.iter().all(|&p| !p.divides(x))
    }

    /// Representative of the class of `x` closest to zero.
    pub fn centered(&self, x: Gi) -> Gi {
        x.rem(self.modulus)
    }

    pub fn units(&self) -> impl Iterator<Item = Gi> + '_ {
        (0..self.size()).map(|k| self.from_index(k)).filter(|&x| self.is_unit(x))
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Order of the unit group of ℤ[i]/γ.
pub fn euler_phi(gamma: &GaussianInteger) -> Result<u64> {
    if gamma.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let (_, factors) = factor_gaussian(gamma.to_small()?)?;
    Ok(factors
        .iter()
        .map(|&(p, e)| {
            let np = p.norm() as u64;
            np.pow(e - 1) * (np - 1)
        })
        .product())
}

/// Representatives of `(ℤ[i]/γ)^× / {±1, ±i}`: the smallest canonical residue
/// in each unit orbit, in increasing canonical order.
pub fn unit_coset_reps(gamma: &GaussianInteger) -> Result<Vec<GaussianInteger>> {
    if gamma.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if gamma.is_unit() {
        return Err(Error::UnitModulus);
    }
    let sys = ResidueSystem::new(gamma.to_small()?)?;
    Ok(orbit_reps(&sys).into_iter().map(GaussianInteger::from).collect())
}

pub(crate) fn orbit_reps(sys: &ResidueSystem) -> Vec<Gi> {
    let mut seen = vec![false; sys.size()];
    let mut reps = vec![];
    for k in 0..sys.size() {
        if seen[k] {
            continue;
        }
        let x = sys.from_index(k);
        if !sys.is_unit(x) {
            continue;
        }
        for u in UNITS {
            seen[sys.index(u.mul(x))] = true;
        }
        reps.push(x);
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(gamma: Gi) -> u64 {
        let sys = ResidueSystem::new(gamma).unwrap();
        (0..sys.size())
            .map(|k| sys.from_index(k))
            .filter(|&x| {
                // x is a unit iff some y has x·y ≡ 1
                (0..sys.size()).any(|j| sys.index(x.mul(sys.from_index(j))) == sys.index(Gi::ONE))
            })
            .count() as u64
    }

    #[test]
    fn phi_of_cube_of_one_plus_i() {
        let g = GaussianInteger::new(1, 1).pow(3);
        assert_eq!(brute_phi(g.to_small().unwrap()), 4);
        assert_eq!(euler_phi(&g).unwrap(), 4);
    }

    #[test]
    fn phi_of_inert_three() {
        assert_eq!(brute_phi(Gi::new(3, 0)), 8);
        assert_eq!(euler_phi(&GaussianInteger::from_int(3)).unwrap(), 8);
    }

    #[test]
    fn phi_matches_enumeration_on_small_moduli() {
        for re in -6..=6 {
            for im in 0..=6 {
                let g = Gi::new(re, im);
                if g.is_zero() {
                    continue;
                }
                assert_eq!(euler_phi(&g.into()).unwrap(), brute_phi(g), "gamma = {g}");
            }
        }
    }

    #[test]
    fn residue_system_is_a_bijection() {
        for g in [Gi::new(3, 0), Gi::new(4, 2), Gi::new(34, 0), Gi::new(28, -28), Gi::new(5, 7)] {
            let sys = ResidueSystem::new(g).unwrap();
            assert_eq!(sys.size() as i128, g.norm());
            for k in 0..sys.size() {
                let x = sys.from_index(k);
                assert_eq!(sys.index(x), k);
                assert_eq!(sys.index(x.add(g.mul(Gi::new(3, -2)))), k);
            }
        }
    }

    #[test]
    fn coset_reps_of_three() {
        let reps = unit_coset_reps(&GaussianInteger::from_int(3)).unwrap();
        assert_eq!(reps.len(), 2);
        let sys = ResidueSystem::new(Gi::new(3, 0)).unwrap();
        let a = reps[0].to_small().unwrap();
        let b = reps[1].to_small().unwrap();
        assert!(UNITS.iter().all(|u| sys.index(u.mul(a)) != sys.index(b)));
    }

    #[test]
    fn coset_reps_errors() {
        assert_eq!(unit_coset_reps(&GaussianInteger::from_int(0)), Err(Error::ZeroModulus));
        assert_eq!(unit_coset_reps(&GaussianInteger::i()), Err(Error::UnitModulus));
        assert_eq!(euler_phi(&GaussianInteger::from_int(0)), Err(Error::ZeroModulus));
    }

    #[test]
    fn factorisation_reassembles() {
        for x in [Gi::new(328, 0), Gi::new(78, 78), Gi::new(-14, 3), Gi::new(17, 0)] {
            let (u, fs) = factor_gaussian(x).unwrap();
            let prod = fs.iter().fold(u, |acc, &(p, e)| acc.mul(p.pow(e as u64)));
            assert_eq!(prod, x);
        }
    }
}
