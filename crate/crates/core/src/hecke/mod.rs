//! Grössencharacter and L-value oracle.

pub mod character;
pub mod lvalue;

pub use character::{point_count, quartic_symbol, ApReport, Calibration, HeckeCharacter};
pub use lvalue::{exact_cp, lf_closed_form, lf_value, ExactCp, LfValue};
