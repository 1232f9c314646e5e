//! `Aₙ mod m` for word-sized `m`, storing only the odd coefficients and
//! using precomputed Shoup multipliers for the fixed per-index factors.

use crate::poly::ring::ModU64;
use crate::poly::DensePolynomial;

#[derive(Clone, Copy, Debug)]
struct Shoup {
    w: u64,
    w_pre: u64,
}

impl Shoup {
    fn new(w: u64, m: u64) -> Self {
        Shoup { w, w_pre: (((w as u128) << 64) / m as u128) as u64 }
    }

    /// `a·w mod m` in `[0, 2m)`.
    #[inline(always)]
    fn mul_lazy(self, a: u64, m: u64) -> u64 {
        let q = ((a as u128 * self.w_pre as u128) >> 64) as u64;
        self.w.wrapping_mul(a).wrapping_sub(q.wrapping_mul(m))
    }
}

/// Iterates `A₀, A₁, …` modulo a word-sized modulus.
#[derive(Clone, Debug)]
pub struct ModStepper {
    ring: ModU64,
    d: i64,
    n: usize,
    /// `odd[j]` is the coefficient of `X^(2j+1)`.
    odd: Vec<u64>,
    up: Vec<Shoup>,
    down: Vec<Shoup>,
}

impl ModStepper {
    /// Starts at `A₀ = 2X³`.
    pub fn new(d: i64, ring: ModU64) -> Self {
        let m = ring.modulus;
        let mut odd = vec![0u64; 2];
        odd[1] = 2 % m;
        ModStepper { ring, d, n: 0, odd, up: vec![], down: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn ensure_factors(&mut self, len: usize) {
        let m = self.ring.modulus;
        while self.up.len() < len {
            let j = self.up.len() as i128;
            let k = 2 * j + 1;
            let up = (k * (k + 1)).rem_euclid(m as i128) as u64;
            let down = (-(self.d as i128) * k * (k - 1)).rem_euclid(m as i128) as u64;
            self.up.push(Shoup::new(up, m));
            self.down.push(Shoup::new(down, m));
        }
    }

    /// `Aₙ ↦ A_{n+1}`.
    pub fn step(&mut self) {
        assert!(self.ring.modulus < 1 << 62, "modulus too large for lazy reduction");
        let m = self.ring.modulus;
        let len = self.odd.len();
        self.ensure_factors(len);
        let mut next = vec![0u64; len + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut acc = 0u64;
            if j >= 1 {
                acc = self.up[j - 1].mul_lazy(self.odd[j - 1], m);
            }
            if j + 1 < len {
                acc += self.down[j + 1].mul_lazy(self.odd[j + 1], m);
            }
            if acc >= 2 * m {
                acc -= 2 * m;
            }
            if acc >= m {
                acc -= m;
            }
            *slot = acc;
        }
        self.odd = next;
        self.n += 1;
    }

    pub fn advance_to(&mut self, n: usize) {
        assert!(n >= self.n);
        while self.n < n {
            self.step();
        }
    }

    /// `Σ a_k s_k` given power sums `s` indexed by exponent.
    pub fn trace(&self, sums: &[u64]) -> u64 {
        let m = self.ring.modulus as u128;
        let mut acc = 0u128;
        for (j, &c) in self.odd.iter().enumerate() {
            acc = (acc + c as u128 * sums[2 * j + 1] as u128) % m;
        }
        acc as u64
    }

    pub fn degree(&self) -> usize {
        2 * self.odd.len() - 1
    }

    pub fn to_dense(&self) -> DensePolynomial<ModU64> {
        let mut c = vec![0u64; 2 * self.odd.len()];
        for (j, &v) in self.odd.iter().enumerate() {
            c[2 * j + 1] = v;
        }
        DensePolynomial::new(self.ring, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::a_poly;

    #[test]
    fn matches_generic_recurrence() {
        for (p, m) in [(5u64, 4u32), (13, 4), (29989, 4), (97, 5)] {
            let ring = ModU64::prime_power(p, m).unwrap();
            let mut s = ModStepper::new(-39, ring);
            for n in 0..=45 {
                s.advance_to(n);
                assert_eq!(s.to_dense(), a_poly(n, -39, ring), "p={p}, n={n}");
            }
        }
    }
}
