use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported curve D = {0}: supply the conductor and rank explicitly")]
    UnsupportedCurve(i64),
    #[error("D = {0} must be nonzero and fourth-power-free")]
    BadD(i64),
    #[error("modulus is zero")]
    ZeroModulus,
    #[error("modulus is a unit")]
    UnitModulus,
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: &'static str },
    #[error("value {0} does not fit the small-integer fast path")]
    TooLarge(String),
    #[error("point lies on the lattice (pole of the Weierstrass function)")]
    PoleAtLatticePoint,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("insufficient precision at {precision_bits} bits: rounding residual 2^{log2_residual:.1}")]
    InsufficientPrecision { precision_bits: u32, log2_residual: f64 },
    #[error("rounded polynomial is not monic over Z[i]")]
    NonMonic,
    #[error("trace needs power sums up to degree {needed}, only {available} available")]
    InsufficientSums { needed: usize, available: usize },
    #[error("sign not calibrated for D = {0}")]
    SignUncalibrated(i64),
    #[error("at least two oracle primes are needed to calibrate the sign")]
    InsufficientCalibration,
    #[error("sign mismatch: p = {p1} wants {s1}, p = {p2} wants {s2}")]
    SignMismatch { p1: u64, s1: i8, p2: u64, s2: i8 },
    #[error("oracle value at p = {p} matches neither sign of the trace formula")]
    OracleDisagreement { p: u64 },
    #[error("minimal polynomial is for D = {got}, curve has D = {expected}")]
    PolynomialMismatch { expected: i64, got: i64 },
    #[error("ord_{p}(c_p) = {ord} is below the rank {rank}")]
    MainConjectureViolation { p: u64, ord: u32, rank: u32 },
    #[error("n = {n} outside the supported range [3, {max}] of odd integers")]
    RangeExceeded { n: u64, max: u64 },
    #[error("divisibility violated at n = {n}, q = {q}: ord {ord} < bound {bound}")]
    DivisibilityViolation { n: u64, q: u64, ord: u64, bound: i64 },
    #[error("elements are not coprime")]
    NotCoprime,
    #[error("prime of even norm has no quartic residue symbol")]
    EvenNormPrime,
    #[error("ideal is not coprime to the conductor")]
    NotCoprimeToConductor,
    #[error("character mismatch at q = {q}: expected a_q = {expected}, got {got}")]
    CharacterMismatch { q: u64, expected: i64, got: i64 },
    #[error("ψ((x)) is not a unit multiple of x modulo the conductor at x = {0}")]
    ConductorMismatch(String),
    #[error("truncation norm {0} exceeds the summation budget")]
    PrecisionUnattainable(u64),
    #[error("could not recognise an exact value: residual 2^{0:.1}")]
    RecognitionFailed(f64),
    #[error("orbit of size {0} is beyond desk scale")]
    OrbitTooLarge(usize),
    #[error("malformed .gpoly input: {0}")]
    Parse(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
