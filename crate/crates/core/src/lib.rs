//! L-value residues for the CM curves `y² = x³ − Dx`.

pub mod analytic;
pub mod error;
pub mod gauss;
pub mod hecke;
pub mod katz;
pub mod poly;
pub mod residue;

pub use error::{Error, Result};
