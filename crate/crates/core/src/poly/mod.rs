//! The polynomial families `Aₙ` and `Bₙ` behind the odd derivatives of `V`
//! and `℘`.
//!
//! `A₀ = 2X³` and `A_{n+1} = (X⁴ − D)Aₙ″ + 2X³Aₙ′`, so `V^{(2n+1)} = Aₙ(W)`.
//! `B₀ = 1` and `B_{n+1} = (4X³ − 4DX)Bₙ″ + (18X² − 6D)Bₙ′ + 12X·Bₙ`, so
//! `℘^{(2n+1)} = Bₙ(℘)·℘′`.

pub mod fast;
pub mod ring;

pub use fast::ModStepper;
pub use ring::{BallRing, CoeffRing, GaussianIntegers, Integers, ModRing, ModU64};

/// Dense polynomial with ascending coefficients over a ring `R`.
#[derive(Clone, Debug)]
pub struct DensePolynomial<R: CoeffRing> {
    pub ring: R,
    pub coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> DensePolynomial<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mut p = DensePolynomial { ring, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(ring: R, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| ring.from_i64(n)).collect();
        Self::new(ring, c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> R::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, x), c))
    }

    /// Coefficient-wise image in another ring.
    pub fn map<S: CoeffRing>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> DensePolynomial<S> {
        DensePolynomial::new(ring, self.coeffs.iter().map(f).collect())
    }
}

impl<R: CoeffRing> PartialEq for DensePolynomial<R>
where
    R::Elem: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

/// One step `Aₙ ↦ A_{n+1}`.
pub fn a_next<R: CoeffRing>(a: &DensePolynomial<R>, d: i64) -> DensePolynomial<R> {
    let ring = &a.ring;
    let len = a.coeffs.len();
    let mut out = vec![ring.zero(); len + 2];
    for (k, c) in a.coeffs.iter().enumerate() {
        if ring.is_zero(c) {
            continue;
        }
        let k = k as i64;
        let up = (k + 2) as usize;
        out[up] = ring.add_mul_i64(&out[up], c, k * (k + 1));
        if k >= 2 {
            let down = (k - 2) as usize;
            out[down] = ring.add_mul_i64(&out[down], &ring.mul_i64(c, -d), k * (k - 1));
        }
    }
    DensePolynomial::new(ring.clone(), out)
}

/// One step `Bₙ ↦ B_{n+1}`.
pub fn b_next<R: CoeffRing>(b: &DensePolynomial<R>, d: i64) -> DensePolynomial<R> {
    let ring = &b.ring;
    let len = b.coeffs.len();
    let mut out = vec![ring.zero(); len + 1];
    for (k, c) in b.coeffs.iter().enumerate() {
        if ring.is_zero(c) {
            continue;
        }
        let k = k as i64;
        let up = (k + 1) as usize;
        out[up] = ring.add_mul_i64(&out[up], c, 2 * (2 * k + 3) * (k + 2));
        if k >= 1 {
            let down = (k - 1) as usize;
            out[down] = ring.add_mul_i64(&out[down], &ring.mul_i64(c, -d), 2 * k * (2 * k + 1));
        }
    }
    DensePolynomial::new(ring.clone(), out)
}

/// `Aₙ` over `ring`, with every intermediate reduced in the ring.
pub fn a_poly<R: CoeffRing>(n: usize, d: i64, ring: R) -> DensePolynomial<R> {
    let mut a = DensePolynomial::from_i64(ring, &[0, 0, 0, 2]);
    for _ in 0..n {
        a = a_next(&a, d);
    }
    a
}

/// `Bₙ` over `ring`.
pub fn b_poly<R: CoeffRing>(n: usize, d: i64, ring: R) -> DensePolynomial<R> {
    let mut b = DensePolynomial::from_i64(ring, &[1]);
    for _ in 0..n {
        b = b_next(&b, d);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, k| acc * k)
    }

    #[test]
    fn first_terms() {
        let d = 17;
        assert_eq!(a_poly(0, d, Integers), DensePolynomial::from_i64(Integers, &[0, 0, 0, 2]));
        assert_eq!(a_poly(1, d, Integers), DensePolynomial::from_i64(Integers, &[0, -12 * d, 0, 0, 0, 24]));
        assert_eq!(b_poly(1, d, Integers), DensePolynomial::from_i64(Integers, &[0, 12]));
        assert_eq!(b_poly(2, d, Integers), DensePolynomial::from_i64(Integers, &[-72 * d, 0, 360]));
    }

    #[test]
    fn degrees_and_leading_coefficients() {
        let d = -14;
        let mut a = a_poly(0, d, Integers);
        let mut b = b_poly(0, d, Integers);
        for n in 0..=100u64 {
            assert_eq!(a.degree(), Some(2 * n as usize + 3));
            if n <= 30 {
                assert_eq!(*a.leading().unwrap(), factorial(2 * n + 2));
                assert_eq!(*b.leading().unwrap(), factorial(2 * n + 2) / 2);
                assert_eq!(b.degree(), Some(n as usize));
            }
            a = a_next(&a, d);
            b = b_next(&b, d);
        }
    }

    #[test]
    fn parity() {
        let d = 82;
        for n in 0..20 {
            let a = a_poly(n, d, Integers);
            assert!(a.coeffs.iter().step_by(2).all(Zero::is_zero));
            let b = b_poly(n, d, Integers);
            let wrong = if n % 2 == 0 { 1 } else { 0 };
            assert!(b.coeffs.iter().skip(wrong).step_by(2).all(Zero::is_zero));
        }
    }

    #[test]
    fn modular_agrees_with_exact() {
        for (p, m) in [(5u64, 4u32), (13, 4), (29, 5), (29989, 4)] {
            let big = ModRing::prime_power(p, m);
            let small = ModU64::prime_power(p, m);
            for n in [0usize, 1, 7, 40] {
                let exact = a_poly(n, -34, Integers);
                let reduced = exact.map(big.clone(), |c| big.reduce(c));
                assert_eq!(a_poly(n, -34, big.clone()), reduced);
                if let Some(r) = small {
                    let reduced = exact.map(r, |c| r.reduce_big(c));
                    assert_eq!(a_poly(n, -34, r), reduced);
                }
            }
        }
    }
}
