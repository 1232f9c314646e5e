//! Periods, Weierstrass functions and the conjugates of `ρ`.

pub mod ball;
pub mod lattice;
pub mod minpoly;
pub mod orbit;
pub mod product;
pub mod traces;
pub mod wp;

pub use ball::{Ball, CBall, Mag};
pub use lattice::{compute_period, LatticeContext};
pub use wp::{wp_eval, wp_fraction};
pub use minpoly::{build_min_poly, reconstruct_min_poly, BuildOptions, MinimalPolynomial};
pub use orbit::{rho_orbit, ConjugateOrbit};
