#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use cmsha::analytic::{build_min_poly, BuildOptions, MinimalPolynomial};
use cmsha::gauss::{make_curve_context, CurveContext, GaussianInteger};
use num_bigint::BigInt;
use cmsha::residue::calibrate;

pub struct Fixture {
    pub curve: CurveContext,
    pub h: MinimalPolynomial,
}

/// Calibrated curve and minimal polynomial, built once per test binary.
pub fn fixture(d: i64) -> Arc<Fixture> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<Fixture>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&d) {
        return f.clone();
    }
    let curve = make_curve_context(d).unwrap();
    let h = polynomial(&curve);
    let curve = calibrate(&curve, &h).unwrap();
    let f = Arc::new(Fixture { curve, h });
    cache.lock().unwrap().entry(d).or_insert(f).clone()
}

/// Curves whose `H` takes long enough to build that test binaries share a
/// copy under the cargo target directory.
const SLOW: [i64; 3] = [-33, -34, -39];

fn cache_path(d: i64) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("h{d}.gpoly"))
}

pub fn polynomial(curve: &CurveContext) -> MinimalPolynomial {
    let path = cache_path(curve.d);
    if SLOW.contains(&curve.d) {
        if let Ok(h) = MinimalPolynomial::read_gpoly(&path) {
            return h;
        }
    }
    let h = build_min_poly(curve, &BuildOptions::default()).unwrap();
    if SLOW.contains(&curve.d) {
        let tmp = path.with_extension(format!("{}.tmp", std::process::id()));
        h.write_gpoly(&tmp).unwrap();
        std::fs::rename(tmp, path).unwrap();
    }
    h
}

/// `(D, exponent, coefficient)` of the largest coefficient of each `H`, as
/// tabulated.
pub fn extreme_coefficients() -> Vec<(i64, usize, GaussianInteger)> {
    include_str!("../data/extreme_coefficients.tsv")
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let c = GaussianInteger::new(f[2].parse::<BigInt>().unwrap(), f[3].parse::<BigInt>().unwrap());
            (f[0].parse().unwrap(), f[1].parse().unwrap(), c)
        })
        .collect()
}

/// A reference residue: `None` marks a prime dividing `D`.
pub type Entry = Option<u64>;

/// Columns of a residue table keyed by `D`, rows in ascending `p`.
pub struct Table {
    pub primes: Vec<u64>,
    pub columns: HashMap<i64, Vec<Entry>>,
}

impl Table {
    pub fn parse(text: &str) -> Table {
        let mut lines = text.lines();
        let header: Vec<i64> = lines.next().unwrap().split('\t').skip(1).map(|s| s.parse().unwrap()).collect();
        let mut primes = vec![];
        let mut columns: HashMap<i64, Vec<Entry>> = header.iter().map(|&d| (d, vec![])).collect();
        for line in lines.filter(|l| !l.is_empty()) {
            let mut f = line.split('\t');
            primes.push(f.next().unwrap().parse().unwrap());
            for (d, v) in header.iter().zip(f) {
                columns.get_mut(d).unwrap().push(v.parse().ok());
            }
        }
        Table { primes, columns }
    }

    pub fn column(&self, d: i64) -> impl Iterator<Item = (u64, Entry)> + '_ {
        self.primes.iter().copied().zip(self.columns[&d].iter().copied())
    }

    pub fn get(&self, d: i64, p: u64) -> Entry {
        self.column(d).find(|(q, _)| *q == p).and_then(|(_, v)| v)
    }
}

pub fn residues_below_1000() -> Table {
    Table::parse(include_str!("../data/residues_below_1000.tsv"))
}

pub fn residues_near_30000() -> Table {
    Table::parse(include_str!("../data/residues_near_30000.tsv"))
}
