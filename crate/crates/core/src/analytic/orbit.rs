//! The conjugates of `ρ = √℘(Ω∞/f₁)` over `K`.

use rayon::prelude::*;

use crate::analytic::ball::{CBall, Mag};
use crate::analytic::lattice::LatticeContext;
use crate::analytic::wp::wp_fraction;
use crate::error::{Error, Result};
use crate::gauss::quotient::ResidueSystem;
use crate::gauss::{CurveContext, GaussianInteger, Gi};
use crate::hecke::HeckeCharacter;

/// The values `ρ_c` for one representative `c` of each conjugate.
#[derive(Clone, Debug)]
pub struct ConjugateOrbit {
    pub reps: Vec<GaussianInteger>,
    pub rho_values: Vec<CBall>,
    pub precision_bits: u32,
}

/// Representatives `c` of the conjugates of `ρ`, each paired with the
/// second element of `ker ε` that yields the same conjugate.
///
/// The conjugates of `℘(Ω∞/f)` are `℘(cΩ∞/f)` for `c` in the kernel `S` of
/// `ε`. Two elements of `S` give the same `ρ` exactly when they agree up to
/// sign modulo `f₁`.
pub fn orbit_pairs(chi: &HeckeCharacter) -> Result<Vec<(Gi, Gi)>> {
    let f1 = ResidueSystem::new(chi.curve.f1.to_small()?)?;
    let mut first: Vec<Option<Gi>> = vec![None; f1.size()];
    let mut pairs = vec![];
    for c in chi.kernel() {
        let key = f1.index(c).min(f1.index(c.neg()));
        match first[key] {
            None => first[key] = Some(c),
            Some(a) => pairs.push((a, c)),
        }
    }
    pairs.sort();
    Ok(pairs)
}

/// `ρ_c = ℘′(cΩ∞/f₁) / (2V_c)` with `V_c = −i(℘(cΩ∞/f) − i·℘(cΩ∞/f₁))`.
pub fn rho_at(c: Gi, f: Gi, f1: Gi, ctx: &LatticeContext) -> Result<CBall> {
    let (p_f, _) = wp_fraction(c, f, ctx)?;
    let (p_f1, dp_f1) = wp_fraction(c, f1, ctx)?;
    let v = p_f.sub(&p_f1.mul_i()).mul_i().neg();
    let noise = Mag::pow2(-(ctx.precision_bits as i64) + 32);
    if v.abs_lower().lt(noise) {
        return Err(Error::PrecisionExhausted(format!("|V_c| below noise floor at c = {c}")));
    }
    Ok(dp_f1.div(&v.mul_2exp(1)).expect("V_c is bounded away from 0"))
}

/// All conjugates of `ρ` at the precision of `ctx`.
pub fn rho_orbit(curve: &CurveContext, ctx: &LatticeContext) -> Result<ConjugateOrbit> {
    let chi = HeckeCharacter::calibrate(curve)?;
    rho_orbit_with(&chi, ctx)
}

pub fn rho_orbit_with(chi: &HeckeCharacter, ctx: &LatticeContext) -> Result<ConjugateOrbit> {
    let f = chi.curve.f.to_small()?;
    let f1 = chi.curve.f1.to_small()?;
    let reps: Vec<Gi> = orbit_pairs(chi)?.into_iter().map(|(a, _)| a).collect();
    let rho_values = reps.par_iter().map(|&c| rho_at(c, f, f1, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(ConjugateOrbit {
        reps: reps.into_iter().map(GaussianInteger::from).collect(),
        rho_values,
        precision_bits: ctx.precision_bits,
    })
}

impl ConjugateOrbit {
    pub fn len(&self) -> usize {
        self.rho_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho_values.is_empty()
    }

    /// `max log₂(1 + |ρ_c|)`, which bounds the coefficient growth of `H`.
    pub fn max_log2_size(&self) -> f64 {
        self.rho_values
            .iter()
            .map(|r| (1.0 + r.abs_upper().to_f64()).log2())
            .fold(0.0, f64::max)
    }
}
