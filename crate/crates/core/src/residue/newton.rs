//! Power sums of the roots of a monic polynomial, and traces built from them.

use crate::error::{Error, Result};
use crate::poly::{CoeffRing, DensePolynomial};

/// `s_k = Σ rootᵏ` for `k = 0..=kmax`.
#[derive(Clone, Debug)]
pub struct PowerSums<R: CoeffRing> {
    pub ring: R,
    pub sums: Vec<R::Elem>,
}

impl<R: CoeffRing> PowerSums<R> {
    pub fn kmax(&self) -> usize {
        self.sums.len() - 1
    }

    pub fn get(&self, k: usize) -> &R::Elem {
        &self.sums[k]
    }
}

/// Newton's identities: for monic `h` of degree `d`,
/// `s_k = −(Σ_{j=1}^{min(k−1,d)} h_{d−j} s_{k−j} + k·h_{d−k})`, the last term
/// present only for `k ≤ d`.
pub fn newton_power_sums<R: CoeffRing>(h: &DensePolynomial<R>, kmax: usize) -> Result<PowerSums<R>>
where
    R::Elem: PartialEq,
{
    let ring = h.ring.clone();
    let d = h.degree().ok_or(Error::NonMonic)?;
    if *h.leading().expect("nonzero") != ring.from_i64(1) {
        return Err(Error::NonMonic);
    }
    let c = &h.coeffs;
    let mut sums = Vec::with_capacity(kmax + 1);
    sums.push(ring.from_i64(d as i64));
    for k in 1..=kmax {
        let mut acc = ring.zero();
        for j in 1..=(k - 1).min(d) {
            acc = ring.add(&acc, &ring.mul(&c[d - j], &sums[k - j]));
        }
        if k <= d {
            acc = ring.add_mul_i64(&acc, &c[d - k], k as i64);
        }
        sums.push(ring.mul_i64(&acc, -1));
    }
    Ok(PowerSums { ring, sums })
}

/// `Σ a_k s_k`, the trace of `A(root)` summed over all roots.
pub fn trace_of<R: CoeffRing>(a: &DensePolynomial<R>, s: &PowerSums<R>) -> Result<R::Elem> {
    let needed = a.coeffs.len().saturating_sub(1);
    if needed > s.kmax() {
        return Err(Error::InsufficientSums { needed, available: s.kmax() });
    }
    let ring = &s.ring;
    Ok(a.coeffs.iter().zip(&s.sums).fold(ring.zero(), |acc, (c, x)| ring.add(&acc, &ring.mul(c, x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{a_poly, Integers, ModU64};
    use num_bigint::BigInt;

    fn quadratic() -> DensePolynomial<Integers> {
        DensePolynomial::from_i64(Integers, &[2, -3, 1])
    }

    #[test]
    fn sums_of_one_and_two() {
        let s = newton_power_sums(&quadratic(), 5).unwrap();
        let want: Vec<BigInt> = [2, 3, 5, 9, 17, 33].into_iter().map(BigInt::from).collect();
        assert_eq!(s.sums, want);
    }

    #[test]
    fn linear_gives_powers() {
        let h = DensePolynomial::from_i64(Integers, &[-7, 1]);
        let s = newton_power_sums(&h, 6).unwrap();
        for k in 0..=6u32 {
            assert_eq!(s.sums[k as usize], BigInt::from(7).pow(k));
        }
    }

    #[test]
    fn traces() {
        let s = newton_power_sums(&quadratic(), 5).unwrap();
        let x = DensePolynomial::from_i64(Integers, &[0, 1]);
        assert_eq!(trace_of(&x, &s).unwrap(), BigInt::from(3));
        assert_eq!(trace_of(&a_poly(0, 17, Integers), &s).unwrap(), BigInt::from(18));
        assert_eq!(trace_of(&a_poly(1, 17, Integers), &s).unwrap(), BigInt::from(180));
        assert_eq!(
            trace_of(&a_poly(2, 17, Integers), &s).unwrap_err(),
            Error::InsufficientSums { needed: 7, available: 5 }
        );
    }

    #[test]
    fn non_monic_is_rejected() {
        let h = DensePolynomial::from_i64(Integers, &[1, 0, 2]);
        assert_eq!(newton_power_sums(&h, 3).unwrap_err(), Error::NonMonic);
        let ring = ModU64::new(13);
        let h = DensePolynomial::from_i64(ring, &[1, 0, 14]);
        assert!(newton_power_sums(&h, 3).is_ok());
    }
}
