//! Polynomial products over complex balls.
//!
//! Midpoints are multiplied exactly through Kronecker substitution (one big
//! integer product per real component combination); radii are propagated
//! separately with magnitude arithmetic.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::analytic::ball::{Ball, CBall, Mag};

/// Pack signed coefficients with `k`-bit slots after adding `2^(k−1)` to
/// each; returns the packed biased value.
fn pack(coeffs: &[&BigInt], k: usize) -> BigUint {
    let words = (coeffs.len() * k).div_ceil(32) + 1;
    let mut digits = vec![0u32; words];
    let bias = BigInt::one() << (k - 1);
    for (i, c) in coeffs.iter().enumerate() {
        let v = (*c + &bias).to_biguint().expect("slot is wide enough");
        let off = i * k;
        let shifted = v << (off % 32);
        for (j, w) in shifted.to_u32_digits().into_iter().enumerate() {
            digits[off / 32 + j] |= w;
        }
    }
    BigUint::from_slice(&digits)
}

fn bias_word(len: usize, k: usize) -> BigUint {
    let mut digits = vec![0u32; (len * k).div_ceil(32) + 1];
    for i in 0..len {
        let bit = i * k + k - 1;
        digits[bit / 32] |= 1 << (bit % 32);
    }
    BigUint::from_slice(&digits)
}

/// `Σ a_i x^i` times `Σ b_j x^j` for integer coefficient vectors.
fn int_poly_mul(a: &[&BigInt], b: &[&BigInt]) -> Vec<BigInt> {
    let n = a.len() + b.len() - 1;
    let bits = |v: &[&BigInt]| v.iter().map(|c| c.bits()).max().unwrap_or(0) as usize;
    let k = bits(a) + bits(b) + (a.len().min(b.len()) as f64).log2().ceil() as usize + 3;
    let pa = BigInt::from(pack(a, k)) - BigInt::from(bias_word(a.len(), k));
    let pb = BigInt::from(pack(b, k)) - BigInt::from(bias_word(b.len(), k));
    let prod = pa * pb + BigInt::from(bias_word(n, k));
    let (sign, digits) = prod.to_u32_digits();
    debug_assert!(sign != Sign::Minus);
    let half = BigInt::one() << (k - 1);
    (0..n)
        .map(|i| {
            let off = i * k;
            let lo = off / 32;
            let hi = ((off + k).div_ceil(32)).min(digits.len());
            let v = if lo >= hi { BigUint::zero() } else { BigUint::from_slice(&digits[lo..hi]) };
            let v = (v >> (off % 32)) & ((BigUint::one() << k) - 1u32);
            BigInt::from(v) - &half
        })
        .collect()
}

/// Product of two polynomials with complex ball coefficients (ascending).
pub fn cpoly_mul(a: &[CBall], b: &[CBall]) -> Vec<CBall> {
    let prec = a[0].prec();
    let n = a.len() + b.len() - 1;
    let ar: Vec<&BigInt> = a.iter().map(|c| c.re.mid_raw()).collect();
    let ai: Vec<&BigInt> = a.iter().map(|c| c.im.mid_raw()).collect();
    let br: Vec<&BigInt> = b.iter().map(|c| c.re.mid_raw()).collect();
    let bi: Vec<&BigInt> = b.iter().map(|c| c.im.mid_raw()).collect();
    let asum: Vec<BigInt> = ar.iter().zip(&ai).map(|(x, y)| *x + *y).collect();
    let bsum: Vec<BigInt> = br.iter().zip(&bi).map(|(x, y)| *x + *y).collect();
    let asum: Vec<&BigInt> = asum.iter().collect();
    let bsum: Vec<&BigInt> = bsum.iter().collect();
    let (rr, (ii, ss)) = rayon::join(
        || int_poly_mul(&ar, &br),
        || rayon::join(|| int_poly_mul(&ai, &bi), || int_poly_mul(&asum, &bsum)),
    );

    let abs_a: Vec<Mag> = a.iter().map(CBall::abs_upper).collect();
    let abs_b: Vec<Mag> = b.iter().map(CBall::abs_upper).collect();
    let rad_a: Vec<Mag> = a.iter().map(|c| c.re.rad().add(c.im.rad())).collect();
    let rad_b: Vec<Mag> = b.iter().map(|c| c.re.rad().add(c.im.rad())).collect();
    let ulp = Mag::pow2(-(prec as i64) + 2);

    (0..n)
        .into_par_iter()
        .map(|j| {
            let lo = j.saturating_sub(b.len() - 1);
            let hi = j.min(a.len() - 1);
            let mut rad = ulp;
            for i in lo..=hi {
                let t = abs_a[i].mul(rad_b[j - i]).add(rad_a[i].mul(abs_b[j - i])).add(rad_a[i].mul(rad_b[j - i]));
                rad = rad.add(t);
            }
            let re = (&rr[j] - &ii[j]) >> prec as usize;
            let im = (&ss[j] - &rr[j] - &ii[j]) >> prec as usize;
            CBall::new(Ball::from_parts(re, rad, prec), Ball::from_parts(im, rad, prec))
        })
        .collect()
}

/// `∏ (X − r)` over the given roots, with a balanced product tree whose shape
/// depends only on the number of roots.
pub fn product_from_roots(roots: &[CBall]) -> Vec<CBall> {
    assert!(!roots.is_empty());
    if roots.len() == 1 {
        let one = CBall::from_real(Ball::from_int(1, roots[0].prec()));
        return vec![roots[0].neg(), one];
    }
    let (l, r) = roots.split_at(roots.len() / 2);
    let (pl, pr) = rayon::join(|| product_from_roots(l), || product_from_roots(r));
    cpoly_mul(&pl, &pr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::Gi;

    #[test]
    fn kronecker_matches_schoolbook() {
        let a: Vec<BigInt> = [-5i64, 0, 123456789, -1, 7].iter().map(|&x| BigInt::from(x) << 70).collect();
        let b: Vec<BigInt> = [3i64, -2, 0, 99].iter().map(|&x| BigInt::from(x)).collect();
        let ar: Vec<&BigInt> = a.iter().collect();
        let br: Vec<&BigInt> = b.iter().collect();
        let got = int_poly_mul(&ar, &br);
        for (j, g) in got.iter().enumerate() {
            let mut want = BigInt::zero();
            for i in 0..a.len() {
                if j >= i && j - i < b.len() {
                    want += &a[i] * &b[j - i];
                }
            }
            assert_eq!(*g, want, "coefficient {j}");
        }
    }

    #[test]
    fn roots_expand_to_integer_polynomial() {
        // (X − (1+2i))(X − (3−i))(X + 2) = X³ + (−2−i)X² + ...
        let roots: Vec<CBall> = [Gi::new(1, 2), Gi::new(3, -1), Gi::new(-2, 0)]
            .iter()
            .map(|&g| CBall::from_gi(g, 128))
            .collect();
        let poly = product_from_roots(&roots);
        let coeffs: Vec<Gi> = poly.iter().map(|c| c.round_to_gaussian().0.to_small().unwrap()).collect();
        // expand by hand
        let mut want = vec![Gi::ONE];
        for r in [Gi::new(1, 2), Gi::new(3, -1), Gi::new(-2, 0)] {
            let mut next = vec![Gi::new(0, 0); want.len() + 1];
            for (k, &c) in want.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c);
                next[k] = next[k].sub(c.mul(r));
            }
            want = next;
        }
        assert_eq!(coeffs, want);
    }
}
