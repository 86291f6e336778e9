use homlie::algebra::catalog::{fixture, FIXTURES};
use homlie::algebra::format::{parse_algebra, parse_matrix, write_algebra, write_matrix};
use homlie::classification::{classify, find, identity_params, instantiate};
use homlie::series::is_filiform;
use homlie::twisting::{untwist, yau_twist};
use homlie::Field;

#[test]
fn every_fixture_round_trips() {
    for (name, text) in FIXTURES {
        if name.ends_with(".map") {
            let m = parse_matrix(text).unwrap();
            assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m, "{name}");
        } else {
            let g = parse_algebra(text).unwrap();
            let again = parse_algebra(&write_algebra(&g)).unwrap();
            assert_eq!(again, g, "{name}");
            assert_eq!(write_algebra(&again), write_algebra(&g), "{name}");
        }
    }
}

#[test]
fn fixture_verdicts() {
    let g = fixture("example4.alg").unwrap().unwrap();
    assert!(g.check_hom_jacobi() && !g.is_lie());
    let sl2 = fixture("sl2.alg").unwrap().unwrap();
    assert!(sl2.is_lie() && !is_filiform(&sl2));
    let l4 = fixture("l4_fp3.alg").unwrap().unwrap();
    assert_eq!(l4.field(), Field::prime(3).unwrap());
    assert!(is_filiform(&l4));
}

#[test]
fn disguised_fixtures_classify() {
    let r = classify(&fixture("mu52_disguised.alg").unwrap().unwrap()).unwrap();
    assert_eq!(r.label(), "mu_5^2");
    let r = classify(&fixture("mu62.alg").unwrap().unwrap()).unwrap();
    assert_eq!(r.label(), "mu_6^2");
}

#[test]
fn twist_then_untwist() {
    let g = fixture("example32.alg").unwrap().unwrap();
    let auto = parse_matrix(FIXTURES.iter().find(|(n, _)| *n == "example32_auto.map").unwrap().1).unwrap();
    let t = yau_twist(&g, &auto).unwrap();
    assert!(t.check_multiplicative());
    assert!(untwist(&t).unwrap().same_bracket(&g));
}

#[test]
fn representatives_by_label() {
    let rep = find("mu_7^6").unwrap();
    let p = identity_params(&rep, Field::Rational).unwrap();
    let g = instantiate(&rep, Field::Rational, &p).unwrap();
    assert!(g.check_hom_jacobi() && is_filiform(&g));
    assert_eq!(classify(&g).unwrap().label(), "mu_7^6");
    assert!(find("mu_9^1").is_err());
}
