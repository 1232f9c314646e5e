//! Numerical Galois traces of odd derivatives of `℘` and of `Aₙ(ρ)`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::analytic::ball::{Ball, CBall};
use crate::analytic::lattice::LatticeContext;
use crate::analytic::orbit::ConjugateOrbit;
use crate::analytic::wp::wp_fraction;
use crate::error::Result;
use crate::gauss::{GaussianInteger, Gi};
use crate::hecke::HeckeCharacter;
use crate::poly::{a_poly, b_poly, Integers};

fn horner(coeffs: &[BigInt], x: &CBall) -> CBall {
    coeffs
        .iter()
        .rev()
        .fold(CBall::zero(x.prec()), |acc, c| acc.mul(x).add(&CBall::from_real(Ball::from_int(c.clone(), x.prec()))))
}

fn ordered_sum(terms: Vec<CBall>, prec: u32) -> CBall {
    terms.iter().fold(CBall::zero(prec), |acc, t| acc.add(t))
}

/// `Σ_{x ∈ ker ε} ℘^{(2n+1)}(xΩ∞/γ)`, computed as `Bₙ(℘)·℘′`.
pub fn wp_derivative_trace(chi: &HeckeCharacter, ctx: &LatticeContext, gamma: Gi, n: usize) -> Result<CBall> {
    let b = b_poly(n, chi.curve.d, Integers).coeffs;
    let terms = chi
        .kernel()
        .par_iter()
        .map(|&x| {
            let (p, dp) = wp_fraction(x, gamma, ctx)?;
            Ok(horner(&b, &p).mul(&dp))
        })
        .collect::<Result<Vec<_>>>()?;
    let prec = terms[0].prec();
    Ok(ordered_sum(terms, prec))
}

/// The trace of `℘^{(2n+1)}(Ω∞/f₁)` from `K(E_f)` down to `K`, which
/// vanishes; the returned ball must contain 0.
pub fn verify_vanishing_trace(chi: &HeckeCharacter, ctx: &LatticeContext, n: usize) -> Result<CBall> {
    wp_derivative_trace(chi, ctx, chi.curve.f1.to_small()?, n)
}

/// `Σ_c Aₙ(ρ_c)` over the conjugates of `ρ`.
pub fn rho_trace(orbit: &ConjugateOrbit, d: i64, n: usize) -> CBall {
    let a = a_poly(n, d, Integers).coeffs;
    let terms: Vec<CBall> = orbit.rho_values.par_iter().map(|r| horner(&a, r)).collect();
    let prec = terms[0].prec();
    ordered_sum(terms, prec)
}

/// Checks `Σ_{x} ℘^{(2n+1)}(xΩ∞/f) = s·(1+i)^{2n+3}·Σ_c Aₙ(ρ_c)` and returns
/// the sign `s` for which the difference ball contains 0.
pub fn transfer_sign(chi: &HeckeCharacter, ctx: &LatticeContext, orbit: &ConjugateOrbit, n: usize) -> Result<Option<i8>> {
    let full = wp_derivative_trace(chi, ctx, chi.curve.f.to_small()?, n)?;
    let factor = GaussianInteger::one_plus_i().pow(2 * n as u64 + 3);
    let rhs = rho_trace(orbit, chi.curve.d, n).mul_gaussian(&factor);
    Ok(if full.sub(&rhs).contains_zero() {
        Some(1)
    } else if full.add(&rhs).contains_zero() {
        Some(-1)
    } else {
        None
    })
}
