mod common;

use cmsha::katz::*;
use cmsha::Error;
use common::fixture;
use num_bigint::BigInt;

#[test]
fn divisibility_for_small_n() {
    let fx = fixture(17);
    let report = katz_check(&fx.curve, &fx.h, 3, 41, &[3, 7, 11]).unwrap();
    assert_eq!(report.entries.len(), 20 * 3);
    assert_eq!(report.exempt(), 0);
    let e = report.entries.iter().find(|e| e.n == 25 && e.q == 3).unwrap();
    assert_eq!(e.bound, 8);
    assert!(e.ord.unwrap() >= 8);
    let trivial = report.entries.iter().find(|e| e.n == 3 && e.q == 7).unwrap();
    assert_eq!(trivial.bound, -1);
    assert!(trivial.satisfied);
}

#[test]
fn rejects_split_or_bad_primes() {
    let fx = fixture(-14);
    for q in [5, 7, 9] {
        assert!(matches!(katz_check(&fx.curve, &fx.h, 3, 9, &[q]), Err(Error::BadPrime { .. })), "q={q}");
    }
}

#[test]
fn range_limits() {
    let fx = fixture(17);
    assert!(matches!(exact_trace_integer(&fx.curve, &fx.h, 4, 11), Err(Error::RangeExceeded { n: 4, .. })));
    assert!(matches!(exact_trace_integer(&fx.curve, &fx.h, 1, 11), Err(Error::RangeExceeded { .. })));
    let traces = ExactTraces::new(&fx.curve, &fx.h, 21).unwrap();
    assert_eq!(traces.trace(23), Err(Error::RangeExceeded { n: 23, max: 21 }));
}

#[test]
fn record_lists_inert_good_primes() {
    let fx = fixture(-14);
    let r = exact_trace_integer(&fx.curve, &fx.h, 17, 30).unwrap();
    assert_eq!(r.valuations.keys().copied().collect::<Vec<_>>(), [3, 11, 19, 23]);
    for (q, v) in &r.valuations {
        assert_eq!(*v, r.t.rational_valuation(&BigInt::from(*q)));
    }
}

#[test]
fn conjugate_polynomial_conjugates_traces() {
    let fx = fixture(-14);
    let plain = ExactTraces::new(&fx.curve, &fx.h, 31).unwrap();
    let conj = ExactTraces::new(&fx.curve, &fx.h.conj(), 31).unwrap();
    for n in (3..=31).step_by(2) {
        assert_eq!(conj.trace(n).unwrap(), plain.trace(n).unwrap().conj());
    }
}

#[test]
fn incremental_and_direct_traces_agree() {
    let fx = fixture(17);
    let t = ExactTraces::new(&fx.curve, &fx.h, 51).unwrap();
    for (n, v) in t.traces(9, 51).unwrap() {
        assert_eq!(v, t.trace(n).unwrap());
    }
}

#[test]
fn trace_formula_matches_direct_l_values() {
    for d in [17, -14] {
        let fx = fixture(d);
        let rows = validate_trace_formula(&fx.curve, &fx.h, 15).unwrap();
        assert_eq!(rows.len(), 7);
        for r in rows {
            assert!(r.agrees, "D={d}: {r:?}");
        }
    }
}

#[test]
fn report_serializes() {
    let fx = fixture(17);
    let report = katz_check(&fx.curve, &fx.h, 3, 9, &[3]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["d"], 17);
    assert_eq!(v["entries"][0]["n"], 3);
    assert_eq!(v["entries"][0]["exempt"], false);
}
