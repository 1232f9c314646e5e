mod common;

use cmsha::analytic::{build_min_poly, BuildOptions, MinimalPolynomial};
use cmsha::gauss::{euler_phi, make_curve_context, SUPPORTED_D};
use cmsha::Error;
use num_traits::Signed;

use common::{extreme_coefficients, polynomial};

#[test]
fn degrees_follow_the_conductor() {
    let want = [(-14, 192), (17, 128), (-33, 960), (-34, 1024), (-39, 576), (82, 6400)];
    for (d, deg) in want {
        let c = make_curve_context(d).unwrap();
        assert_eq!(euler_phi(&c.f).unwrap() / 8, deg, "D={d}");
    }
    assert_eq!(SUPPORTED_D.len(), want.len());
}

#[test]
fn small_curves_match_bit_exactly() {
    for (d, k, want) in extreme_coefficients().into_iter().filter(|(d, ..)| [17, -14].contains(d)) {
        let h = polynomial(&make_curve_context(d).unwrap());
        assert!(h.is_monic());
        assert_eq!(h.coeff(k), &want, "D={d}");
        assert_eq!(h.extreme_coefficient(), (k, &want));
    }
}

#[test]
fn rank_three_curve_is_refused() {
    let c = make_curve_context(82).unwrap();
    assert_eq!(build_min_poly(&c, &BuildOptions::default()).unwrap_err(), Error::OrbitTooLarge(6400));
}

#[test]
fn too_little_precision_is_escalated() {
    let c = make_curve_context(17).unwrap();
    let h = build_min_poly(&c, &BuildOptions { precision_bits: Some(64), max_degree: None }).unwrap();
    assert!(h.precision_bits > 64);
    assert_eq!(h.coeffs, polynomial(&c).coeffs);
}

#[test]
fn file_round_trip() {
    let h = polynomial(&make_curve_context(-14).unwrap());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.gpoly");
    h.write_gpoly(&path).unwrap();
    let back = MinimalPolynomial::read_gpoly(&path).unwrap();
    assert_eq!(back, h);
    assert_eq!(back.to_gpoly(), h.to_gpoly());
}

/// The larger curves carry the tabulated digits one power of `X` lower.
#[test]
fn large_curves_carry_the_tabulated_digits() {
    for (d, k, want) in extreme_coefficients().into_iter().filter(|(d, ..)| [-33, -34, -39].contains(d)) {
        let h = polynomial(&make_curve_context(d).unwrap());
        let got = h.coeff(k - 1);
        assert_eq!(got.re.abs(), want.re.abs(), "D={d}");
        assert_eq!(got.im.abs(), want.im.abs(), "D={d}");
    }
}
