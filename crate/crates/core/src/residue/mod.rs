//! Residues of `c_p⁺` modulo `p` from the minimal polynomial of `ρ`.

pub mod newton;
pub mod pipeline;
pub mod table;

pub use newton::{newton_power_sums, trace_of, PowerSums};
pub use pipeline::{
    calibrate, calibrate_sign, certify_sign, calibration_primes, check_prime, cp_mod_prime_power, cp_residue, exact_quotient, Classification,
    ResidueReport, Valuation,
};
pub use table::{table_primes, table_run, to_json, to_tsv, TableRow};
