//! Exact arithmetic in ℤ[i] and its residue rings, plus the curve constants.

pub mod curve;
pub mod gaussian;
pub mod modular;
pub mod quotient;

pub use curve::{make_curve_context, CurveContext, SUPPORTED_D};
pub use gaussian::{GaussianInteger, Gi};
pub use modular::{hensel_root_minus_one, reduce_gaussian, GaussianResidue, ResidueRing};
pub use quotient::{euler_phi, unit_coset_reps, ResidueSystem};
