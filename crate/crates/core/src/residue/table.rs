//! Batch runs over ranges of primes, with TSV and JSON rendering.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::MinimalPolynomial;
use crate::error::{Error, Result};
use crate::gauss::quotient::is_prime_u64;
use crate::gauss::CurveContext;
use crate::residue::pipeline::{cp_residue, ResidueReport};

/// One row of a table: a report, a prime dividing `2D` (printed as `*`), or
/// a per-prime failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TableRow {
    Ok(ResidueReport),
    Bad { p: u64 },
    Failed { p: u64, error: String },
}

impl TableRow {
    pub fn p(&self) -> u64 {
        match self {
            TableRow::Ok(r) => r.p,
            TableRow::Bad { p } | TableRow::Failed { p, .. } => *p,
        }
    }

    pub fn report(&self) -> Option<&ResidueReport> {
        match self {
            TableRow::Ok(r) => Some(r),
            _ => None,
        }
    }
}

/// Primes `p ≡ 1 mod 4` in `[lo, hi]`.
pub fn table_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(5)..=hi).filter(|&p| p % 4 == 1 && is_prime_u64(p)).collect()
}

/// Residues for every `p ≡ 1 mod 4` in `[lo, hi]`, in ascending order.
pub fn table_run(curve: &CurveContext, h: &MinimalPolynomial, lo: u64, hi: u64) -> Result<Vec<TableRow>> {
    if curve.sign.is_none() {
        return Err(Error::SignUncalibrated(curve.d));
    }
    Ok(table_primes(lo, hi)
        .into_par_iter()
        .map(|p| {
            if curve.d.unsigned_abs().is_multiple_of(p) {
                return TableRow::Bad { p };
            }
            match cp_residue(curve, h, p) {
                Ok(r) => TableRow::Ok(r),
                Err(e) => TableRow::Failed { p, error: e.to_string() },
            }
        })
        .collect())
}

pub fn to_tsv(rows: &[TableRow]) -> String {
    let mut s = String::from("p\tresidue\tord\tclassification\tchecks\n");
    for row in rows {
        match row {
            TableRow::Ok(r) => {
                let checks = if r.imag_check && r.root_swap_check { "ok" } else { "FAILED" };
                writeln!(s, "{}\t{}\t{}\t{}\t{checks}", r.p, r.residue, r.ord, r.classification).unwrap();
            }
            TableRow::Bad { p } => writeln!(s, "{p}\t*\t\t\t").unwrap(),
            TableRow::Failed { p, error } => writeln!(s, "{p}\t!\t\t\t{error}").unwrap(),
        }
    }
    s
}

pub fn to_json(rows: &[TableRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}
