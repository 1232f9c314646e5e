use cmsha::gauss::{make_curve_context, SUPPORTED_D};
use cmsha::hecke::lvalue::{ideals_up_to, lf_truncated, tail_bound};
use cmsha::hecke::{exact_cp, lf_value, HeckeCharacter};
use cmsha::Error;

fn chi(d: i64) -> HeckeCharacter {
    HeckeCharacter::calibrate(&make_curve_context(d).unwrap()).unwrap()
}

#[test]
fn rank_three_curve_without_minimal_polynomial() {
    let chi = chi(82);
    for (p, want) in [(5, 3), (13, 4)] {
        let c = exact_cp(&chi, p).unwrap();
        assert_eq!(c.ord(), Some(3));
        assert_eq!(c.residue(3), want);
        assert!(c.residual_log2 < -32.0);
    }
}

#[test]
fn bad_primes_are_refused() {
    let chi = chi(-39);
    for p in [3, 7, 13] {
        assert!(matches!(exact_cp(&chi, p), Err(Error::BadPrime { .. })), "p={p}");
    }
}

#[test]
fn values_are_positive_rationals() {
    for d in SUPPORTED_D {
        let c = exact_cp(&chi(d), 5).unwrap();
        assert!(c.value > num_rational::BigRational::from_integer(0.into()), "D={d}");
    }
}

#[test]
fn truncated_sums_approach_one() {
    let chi = chi(-33);
    let v = lf_truncated(&chi, 11, 4096);
    assert!((v.re - 1.0).abs() < 0.01);
    assert!(v.im.abs() <= v.error_bound);
    assert!(tail_bound(4096, 11) < 1e-12);
}

#[test]
fn tail_budget() {
    let chi = chi(17);
    assert!(lf_value(&chi, 7, 30, 1 << 20).is_ok());
    assert!(matches!(lf_value(&chi, 3, 40, 1 << 20), Err(Error::PrecisionUnattainable(_))));
}

#[test]
fn ideal_enumeration_has_one_generator_per_ideal() {
    let gens: Vec<_> = ideals_up_to(50).collect();
    assert!(gens.iter().all(|g| g.re > 0 && g.im >= 0));
    let mut norms: Vec<i128> = gens.iter().map(|g| g.norm()).collect();
    norms.sort();
    assert_eq!(&norms[..6], &[1, 2, 4, 5, 5, 8]);
}
