//! Reduction of ℤ[i] into ℤ/pᵐ for a split prime p, through a chosen square
//! root of −1.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::gaussian::GaussianInteger;
use crate::gauss::quotient::sqrt_minus_one_mod;

/// Canonical square root of −1 modulo `p^m`: the one below `p^m / 2`.
pub fn hensel_root_minus_one(p: u64, m: u32) -> Result<BigUint> {
    if p % 4 != 1 {
        return Err(Error::BadPrime { p, reason: "not congruent to 1 mod 4" });
    }
    let m = m.max(1);
    let p_big = BigUint::from(p);
    let mut r = BigUint::from(sqrt_minus_one_mod(p));
    let mut modulus = p_big.clone();
    for _ in 1..m {
        modulus *= &p_big;
        // Newton step r ← r − (r² + 1)/(2r)
        let f = (&r * &r + 1u32) % &modulus;
        let inv = mod_inverse(&((&r << 1) % &modulus), &modulus).expect("2r is a unit");
        r = (&r + &modulus - (f * inv) % &modulus) % &modulus;
    }
    let other = &modulus - &r;
    Ok(if r < other { r } else { other })
}

pub(crate) fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    e.gcd.is_one().then(|| e.x.mod_floor(&m).to_biguint().expect("nonnegative"))
}

/// The ring ℤ/pᵐ together with the image `root` of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    pub p: u64,
    pub m: u32,
    pub modulus: BigUint,
    pub root: BigUint,
}

impl ResidueRing {
    /// Ring with the canonical (smaller) root.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let root = hensel_root_minus_one(p, m)?;
        Ok(ResidueRing { p, m, modulus: BigUint::from(p).pow(m), root })
    }

    /// The same ring with `i` sent to the other root; reduction through it is
    /// reduction of the complex conjugate.
    pub fn swapped(&self) -> Self {
        ResidueRing { root: &self.modulus - &self.root, ..self.clone() }
    }

    pub fn reduce_int(&self, a: &BigInt) -> BigUint {
        a.mod_floor(&BigInt::from(self.modulus.clone())).to_biguint().expect("nonnegative")
    }
}

/// A residue class modulo pᵐ obtained from ℤ[i].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianResidue {
    pub value: BigUint,
    pub ring: ResidueRing,
}

impl GaussianResidue {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianResidue { value: (&self.value + &o.value) % &self.ring.modulus, ring: self.ring.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianResidue { value: (&self.value * &o.value) % &self.ring.modulus, ring: self.ring.clone() }
    }
}

/// `a.re + a.im·root mod pᵐ`.
pub fn reduce_gaussian(a: &GaussianInteger, ring: &ResidueRing) -> GaussianResidue {
    let v = &a.re + &a.im * BigInt::from(ring.root.clone());
    GaussianResidue { value: ring.reduce_int(&v), ring: ring.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn roots_of_minus_one() {
        assert_eq!(hensel_root_minus_one(5, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(hensel_root_minus_one(13, 1).unwrap(), BigUint::from(5u32));
        assert_eq!(hensel_root_minus_one(5, 2).unwrap(), BigUint::from(7u32));
        assert!(matches!(hensel_root_minus_one(7, 1), Err(Error::BadPrime { p: 7, .. })));
    }

    #[test]
    fn large_lift_squares_to_minus_one() {
        let r = hensel_root_minus_one(29989, 5).unwrap();
        let m = BigUint::from(29989u32).pow(5);
        assert_eq!((&r * &r + 1u32) % &m, BigUint::zero());
        assert!(&r + &r < m);
    }

    #[test]
    fn reduction_examples() {
        let ring = ResidueRing::new(5, 1).unwrap();
        assert_eq!(reduce_gaussian(&GaussianInteger::i(), &ring).value, BigUint::from(2u32));
        let ring = ResidueRing::new(13, 1).unwrap();
        let oi = GaussianInteger::one_plus_i();
        assert_eq!(reduce_gaussian(&oi, &ring).value, BigUint::from(6u32));
        let sq = &oi * &oi;
        assert_eq!(reduce_gaussian(&sq, &ring).value, BigUint::from(10u32));
        assert_eq!(reduce_gaussian(&GaussianInteger::new(0, 2), &ring).value, BigUint::from(10u32));
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_homomorphism(
            a in (-10_000i64..10_000, -10_000i64..10_000),
            b in (-10_000i64..10_000, -10_000i64..10_000),
            (p, m) in prop::sample::select(vec![(5u64, 1u32), (5, 3), (13, 2), (29, 4), (29989, 5)]),
        ) {
            let ring = ResidueRing::new(p, m).unwrap();
            let a = GaussianInteger::new(a.0, a.1);
            let b = GaussianInteger::new(b.0, b.1);
            let ra = reduce_gaussian(&a, &ring);
            let rb = reduce_gaussian(&b, &ring);
            prop_assert_eq!(reduce_gaussian(&(&a + &b), &ring), ra.add(&rb));
            prop_assert_eq!(reduce_gaussian(&(&a * &b), &ring), ra.mul(&rb));
        }

        #[test]
        fn swapped_root_reduces_the_conjugate(re in -1_000_000i64..1_000_000, im in -1_000_000i64..1_000_000) {
            let ring = ResidueRing::new(13, 3).unwrap();
            let a = GaussianInteger::new(re, im);
            prop_assert_eq!(
                reduce_gaussian(&a.conj(), &ring).value,
                reduce_gaussian(&a, &ring.swapped()).value
            );
        }
    }
}
