use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::gaussian::GaussianInteger;

/// The six curves `y² = x³ − Dx` with tabulated conductors.
pub const SUPPORTED_D: [i64; 6] = [-14, 17, -33, -34, -39, 82];

/// Constants attached to `E_D : y² = x³ − Dx` over `K = ℚ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveContext {
    pub d: i64,
    /// Rank of `E(ℚ)`.
    pub rank: u32,
    /// Generator of the conductor of the Grössencharacter.
    pub f: GaussianInteger,
    /// `f / (1+i)`.
    pub f1: GaussianInteger,
    /// `1` for `D > 0`, `1+i` for `D < 0`.
    pub alpha: GaussianInteger,
    /// `f·alpha / (1+i)`.
    pub beta: GaussianInteger,
    /// Sign of the trace formula for `c_p⁺`, once calibrated.
    pub sign: Option<i8>,
}

fn table_entry(d: i64) -> Option<(GaussianInteger, u32)> {
    let two_one_plus_i = GaussianInteger::new(2, 2);
    let f = match d {
        -14 => GaussianInteger::from_int(8 * 7),
        17 => &two_one_plus_i * &GaussianInteger::from_int(17),
        -33 => GaussianInteger::from_int(4 * 3 * 11),
        -34 => GaussianInteger::from_int(8 * 17),
        -39 => &two_one_plus_i * &GaussianInteger::from_int(3 * 13),
        82 => GaussianInteger::from_int(8 * 41),
        _ => return None,
    };
    Some((f, if d == 82 { 3 } else { 2 }))
}

pub fn is_fourth_power_free(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut q = 2u64;
    while q.pow(4) <= n {
        if n.is_multiple_of(q.pow(4)) {
            return false;
        }
        q += 1;
    }
    true
}

/// Context for one of the tabulated curves.
pub fn make_curve_context(d: i64) -> Result<CurveContext> {
    let (f, rank) = table_entry(d).ok_or(Error::UnsupportedCurve(d))?;
    CurveContext::with_conductor(d, f, rank)
}

impl CurveContext {
    /// Context for an arbitrary `D` with a caller-supplied conductor and rank.
    pub fn with_conductor(d: i64, f: GaussianInteger, rank: u32) -> Result<Self> {
        if !is_fourth_power_free(d) {
            return Err(Error::BadD(d));
        }
        let one_plus_i = GaussianInteger::one_plus_i();
        let f1 = f.div_exact(&one_plus_i).ok_or(Error::UnsupportedCurve(d))?;
        let alpha = if d > 0 { GaussianInteger::from_int(1) } else { one_plus_i.clone() };
        let beta = (&f * &alpha).div_exact(&one_plus_i).expect("(1+i) | f");
        Ok(CurveContext { d, rank, f, f1, alpha, beta, sign: None })
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = Some(sign);
        self
    }

    /// `m = rank + 2`, the exponent that separates `ord = g`, `g+1` and `≥ g+2`.
    pub fn modulus_exponent(&self) -> u32 {
        self.rank + 2
    }

    pub fn contains_point(&self, x: i64, y: i64) -> bool {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        &y * &y == &x * &x * &x - BigInt::from(self.d) * &x
    }

    /// Whether `E` has good reduction at the odd prime `q`.
    pub fn good_at(&self, q: u64) -> bool {
        q != 2 && !self.d.unsigned_abs().is_multiple_of(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductors_from_the_table() {
        let c = make_curve_context(-14).unwrap();
        assert_eq!(c.f, GaussianInteger::from_int(56));
        assert_eq!(c.rank, 2);
        assert_eq!(c.beta, GaussianInteger::from_int(56));

        let c = make_curve_context(17).unwrap();
        assert_eq!(c.f, GaussianInteger::new(34, 34));
        assert_eq!(c.f1, GaussianInteger::from_int(34));
        assert_eq!(c.beta, GaussianInteger::from_int(34));

        let c = make_curve_context(82).unwrap();
        assert_eq!(c.f, GaussianInteger::from_int(328));
        assert_eq!(c.rank, 3);
        assert_eq!(c.beta, GaussianInteger::new(164, -164));
    }

    #[test]
    fn derived_constants_are_consistent() {
        for d in SUPPORTED_D {
            let c = make_curve_context(d).unwrap();
            assert_eq!(&c.f1 * &GaussianInteger::one_plus_i(), c.f);
            assert_eq!(&c.beta * &GaussianInteger::one_plus_i(), &c.f * &c.alpha);
        }
    }

    #[test]
    fn generators_of_rank_three_curve() {
        let c = make_curve_context(82).unwrap();
        for (x, y) in [(-9, 3), (-8, 12), (-1, 9)] {
            assert!(c.contains_point(x, y));
        }
    }

    #[test]
    fn unsupported_and_bad() {
        assert_eq!(make_curve_context(5), Err(Error::UnsupportedCurve(5)));
        assert_eq!(CurveContext::with_conductor(16, GaussianInteger::from_int(8), 0), Err(Error::BadD(16)));
        let c = CurveContext::with_conductor(5, GaussianInteger::new(10, 10), 0).unwrap();
        assert_eq!(c.f1, GaussianInteger::from_int(10));
    }
}
