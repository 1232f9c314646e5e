//! Weierstrass `℘` and `℘′` on `ℒ = Ω∞·ℤ[i]`.
//!
//! The argument is reduced into the fundamental parallelogram, halved until
//! it sits deep inside the disc of convergence of the Laurent expansion at 0,
//! and the values are carried back with the duplication formula.

use num_bigint::BigInt;

use crate::analytic::ball::{Ball, CBall, Mag};
use crate::analytic::lattice::LatticeContext;
use crate::error::{Error, Result};
use crate::gauss::Gi;

/// Bound on `Σ_{(a,b)≠0} (a²+b²)^(−k)` for `k ≥ 2`.
const EPSTEIN_BOUND: f64 = 6.1;

/// `℘(w)` and `℘′(w)` from the truncated Laurent series plus a rigorous
/// tail bound; requires `|w| ≤ 0.35·|Ω∞|`.
fn laurent_eval(w: &CBall, ctx: &LatticeContext) -> Result<(CBall, CBall)> {
    let u = w.sqr();
    let v = u.sqr();
    let prec = ctx.work_bits;
    let horner = |coeffs: &[Ball]| {
        let mut acc = CBall::zero(prec);
        for c in coeffs.iter().rev() {
            acc = acc.mul(&v).add(&CBall::from_real(c.clone()));
        }
        acc
    };
    let s = horner(&ctx.laurent);
    let ds = horner(&ctx.laurent_deriv);

    let inv_u = u.inv().ok_or(Error::PoleAtLatticePoint)?;
    let w3 = u.mul(w);
    let inv_w3 = w3.inv().ok_or(Error::PoleAtLatticePoint)?;
    let p = inv_u.add(&u.mul(&s));
    let dp = inv_w3.mul_i64(-2).add(&w.mul(&ds));

    let j = ctx.laurent.len() as f64;
    let x = w.abs_upper().mul(ctx.inv_omega_abs);
    assert!(x.to_f64() < 0.35, "argument not reduced");
    let k = 4.0 * j + 2.0;
    let scale = ctx.inv_omega_abs.mul(ctx.inv_omega_abs);
    let tail = x.pow(k as u32).mul_f64(2.0 * EPSTEIN_BOUND * (k + 1.0)).mul(scale);
    let dtail = x
        .pow(k as u32 - 1)
        .mul_f64(2.0 * EPSTEIN_BOUND * (k + 1.0) * k)
        .mul(scale)
        .mul(ctx.inv_omega_abs);
    let widen = |z: CBall, t: Mag| CBall::new(z.re.with_rad(t), z.im.with_rad(t));
    Ok((widen(p, tail), widen(dp, dtail)))
}

/// One application of the duplication formula:
/// `(℘(w), ℘′(w)) ↦ (℘(2w), ℘′(2w))`.
pub(crate) fn duplicate(p: &CBall, dp: &CBall, d: i64) -> Result<(CBall, CBall)> {
    let prec = p.prec();
    let num = p.sqr().mul_i64(6).sub(&CBall::from_real(Ball::from_int(2 * d, prec)));
    let lambda = num.div(dp).ok_or_else(|| Error::PrecisionExhausted("℘′ vanishes at a halved point".into()))?;
    let p2 = lambda.sqr().mul_2exp(-2).sub(&p.mul_i64(2));
    let dp2 = lambda.mul(&p2.sub(p)).neg().sub(dp);
    Ok((p2, dp2))
}

fn eval_reduced(z: &CBall, ctx: &LatticeContext) -> Result<(CBall, CBall)> {
    if z.contains_zero() {
        return Err(Error::PoleAtLatticePoint);
    }
    let w = z.mul_2exp(-(ctx.halvings as i64));
    let (mut p, mut dp) = laurent_eval(&w, ctx)?;
    for _ in 0..ctx.halvings {
        (p, dp) = duplicate(&p, &dp, ctx.d)?;
    }
    Ok((p.set_prec(ctx.precision_bits + 32), dp.set_prec(ctx.precision_bits + 32)))
}

/// `(℘(z), ℘′(z))` for an arbitrary complex ball `z`.
pub fn wp_eval(z: &CBall, ctx: &LatticeContext) -> Result<(CBall, CBall)> {
    let z = z.set_prec(ctx.work_bits);
    let t = z.div(&ctx.omega_inf).expect("Ω∞ ≠ 0");
    let (n, _) = t.round_to_gaussian();
    let reduced = z.sub(&ctx.omega_inf.mul_gaussian(&n));
    eval_reduced(&reduced, ctx)
}

/// The point `(a/b)·Ω∞` with `a` reduced exactly modulo `b` first.
pub fn lattice_point(a: Gi, b: Gi, ctx: &LatticeContext) -> Result<CBall> {
    if b.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return Err(Error::PoleAtLatticePoint);
    }
    let num = ctx.omega_inf.mul_gi(r).mul_gi(b.conj());
    Ok(num.div_int(&BigInt::from(b.norm())))
}

/// `(℘, ℘′)` at the lattice fraction `(a/b)·Ω∞`.
pub fn wp_fraction(a: Gi, b: Gi, ctx: &LatticeContext) -> Result<(CBall, CBall)> {
    eval_reduced(&lattice_point(a, b, ctx)?, ctx)
}

/// Upper bound on `|℘′² − (4℘³ − 4D℘)|`.
pub fn ode_residual(p: &CBall, dp: &CBall, d: i64) -> Mag {
    let rhs = p.sqr().mul(p).mul_i64(4).sub(&p.mul_i64(4 * d));
    dp.sqr().sub(&rhs).abs_upper()
}
