//! Exact reconstruction of the minimal polynomial `H(X)` of `ρ` and its
//! `.gpoly` file format.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::analytic::ball::{CBall, Mag};
use crate::analytic::lattice::compute_period;
use crate::analytic::orbit::{rho_orbit_with, ConjugateOrbit};
use crate::analytic::product::product_from_roots;
use crate::error::{Error, Result};
use crate::gauss::{CurveContext, GaussianInteger};
use crate::hecke::HeckeCharacter;

/// Largest residual tolerated when rounding a coefficient to `ℤ[i]`.
pub const ROUNDING_TOLERANCE_LOG2: f64 = -24.0;

/// Monic `H ∈ ℤ[i][X]`, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalPolynomial {
    pub d: i64,
    pub f: GaussianInteger,
    pub coeffs: Vec<GaussianInteger>,
    pub precision_bits: u32,
    /// `log₂` of the largest rounding residual.
    pub residual_log2: f64,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &GaussianInteger {
        &self.coeffs[k]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == GaussianInteger::from_int(1))
    }

    /// The polynomial with every coefficient conjugated.
    pub fn conj(&self) -> MinimalPolynomial {
        MinimalPolynomial {
            f: self.f.conj(),
            coeffs: self.coeffs.iter().map(GaussianInteger::conj).collect(),
            ..self.clone()
        }
    }

    /// Coefficient of largest absolute value, with its degree.
    pub fn extreme_coefficient(&self) -> (usize, &GaussianInteger) {
        self.coeffs.iter().enumerate().max_by_key(|(_, c)| c.norm()).expect("nonempty")
    }

    pub fn to_gpoly(&self) -> String {
        let mut s = String::new();
        writeln!(s, "D {}", self.d).unwrap();
        writeln!(s, "f {} {}", self.f.re, self.f.im).unwrap();
        writeln!(s, "degree {}", self.degree()).unwrap();
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(s, "c {k} {} {}", c.re, c.im).unwrap();
        }
        writeln!(s, "meta precision_bits {} residual {:?}", self.precision_bits, self.residual_log2.exp2()).unwrap();
        s
    }

    pub fn write_gpoly(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_gpoly().as_bytes())?;
        Ok(())
    }

    pub fn read_gpoly(path: &Path) -> Result<MinimalPolynomial> {
        let file = std::io::BufReader::new(std::fs::File::open(path)?);
        let lines = file.lines().collect::<std::io::Result<Vec<_>>>()?;
        Self::parse_gpoly(&lines.join("\n"))
    }

    pub fn parse_gpoly(text: &str) -> Result<MinimalPolynomial> {
        let bad = |msg: &str| Error::Parse(msg.to_string());
        let int = |s: Option<&str>| -> Result<BigInt> {
            s.ok_or_else(|| bad("missing field"))?.parse::<BigInt>().map_err(|e| bad(&e.to_string()))
        };
        let mut d = None;
        let mut f = None;
        let mut degree = None;
        let mut coeffs: Vec<GaussianInteger> = vec![];
        let mut meta = (0u32, 0f64);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut it = line.split_whitespace();
            match it.next() {
                Some("D") => d = Some(it.next().and_then(|s| s.parse::<i64>().ok()).ok_or_else(|| bad("D"))?),
                Some("f") => f = Some(GaussianInteger { re: int(it.next())?, im: int(it.next())? }),
                Some("degree") => {
                    degree = Some(it.next().and_then(|s| s.parse::<usize>().ok()).ok_or_else(|| bad("degree"))?)
                }
                Some("c") => {
                    let k: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("index"))?;
                    if k != coeffs.len() {
                        return Err(bad("coefficients out of order"));
                    }
                    coeffs.push(GaussianInteger { re: int(it.next())?, im: int(it.next())? });
                }
                Some("meta") => {
                    let fields: Vec<&str> = it.collect();
                    if let ["precision_bits", p, "residual", r] = fields.as_slice() {
                        let r: f64 = r.parse().map_err(|_| bad("residual"))?;
                        meta = (p.parse().map_err(|_| bad("precision_bits"))?, r.log2());
                    } else {
                        return Err(bad("meta line"));
                    }
                }
                _ => return Err(bad(line)),
            }
        }
        let degree = degree.ok_or_else(|| bad("missing degree"))?;
        if coeffs.len() != degree + 1 {
            return Err(bad("coefficient count does not match degree"));
        }
        let poly = MinimalPolynomial {
            d: d.ok_or_else(|| bad("missing D"))?,
            f: f.ok_or_else(|| bad("missing f"))?,
            coeffs,
            precision_bits: meta.0,
            residual_log2: meta.1,
        };
        if !poly.is_monic() {
            return Err(Error::NonMonic);
        }
        Ok(poly)
    }
}

/// Expands `∏(X − ρ_c)` and rounds every coefficient to `ℤ[i]`.
pub fn reconstruct_min_poly(curve: &CurveContext, orbit: &ConjugateOrbit) -> Result<MinimalPolynomial> {
    let poly = product_from_roots(&orbit.rho_values);
    let mut worst = Mag::ZERO;
    let coeffs: Vec<GaussianInteger> = poly
        .iter()
        .map(|c| {
            let (g, err) = c.round_to_gaussian();
            worst = worst.max(err);
            g
        })
        .collect();
    let residual_log2 = worst.log2();
    if residual_log2 > ROUNDING_TOLERANCE_LOG2 {
        return Err(Error::InsufficientPrecision { precision_bits: orbit.precision_bits, log2_residual: residual_log2 });
    }
    let h = MinimalPolynomial { d: curve.d, f: curve.f.clone(), coeffs, precision_bits: orbit.precision_bits, residual_log2 };
    if !h.is_monic() {
        return Err(Error::NonMonic);
    }
    Ok(h)
}

/// Options for [`build_min_poly`].
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Starting precision; estimated from the orbit when `None`.
    pub precision_bits: Option<u32>,
    /// Refuse orbits larger than this.
    pub max_degree: Option<usize>,
}

/// Computes `H` for a curve, doubling the precision until every coefficient
/// rounds cleanly.
pub fn build_min_poly(curve: &CurveContext, opts: &BuildOptions) -> Result<MinimalPolynomial> {
    let degree = (crate::gauss::euler_phi(&curve.f)? / 8) as usize;
    if degree > opts.max_degree.unwrap_or(1100) {
        return Err(Error::OrbitTooLarge(degree));
    }
    let chi = HeckeCharacter::calibrate(curve)?;
    let mut bits = match opts.precision_bits {
        Some(b) => b,
        None => {
            let probe = rho_orbit_with(&chi, &compute_period(curve.d, 128)?)?;
            64 + (1.2 * degree as f64 * probe.max_log2_size()).ceil() as u32
        }
    };
    loop {
        let ctx = compute_period(curve.d, bits)?;
        let orbit = rho_orbit_with(&chi, &ctx)?;
        match reconstruct_min_poly(curve, &orbit) {
            Err(Error::InsufficientPrecision { .. }) if bits < 1 << 20 => bits *= 2,
            other => return other,
        }
    }
}

/// Largest `|H(ρ_c)|` over an orbit, evaluated by Horner in ball arithmetic.
pub fn max_residual(h: &MinimalPolynomial, orbit: &ConjugateOrbit) -> Mag {
    orbit
        .rho_values
        .iter()
        .map(|r| {
            let prec = r.prec();
            let mut acc = CBall::zero(prec);
            for c in h.coeffs.iter().rev() {
                acc = acc.mul(r).add(&CBall::from_gaussian(c, prec));
            }
            acc.abs_upper()
        })
        .fold(Mag::ZERO, Mag::max)
}
