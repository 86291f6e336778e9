use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn catalog(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "catalog", name].iter().collect();
    p.display().to_string()
}

fn scratch(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("homlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homlie")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

#[test]
fn check_example4() {
    let (code, r) = report(&["check", &catalog("example4.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["hom_jacobi"], true);
    assert_eq!(r["verdicts"]["lie"], false);
    assert!(r["verdicts"]["multiplicative"].is_boolean());
    assert_eq!(r["inputs"].as_object().unwrap().values().next().unwrap().as_str().unwrap().len(), 64);
}

#[test]
fn duplicate_pair_is_input_error() {
    let path = scratch("dup.alg");
    std::fs::write(
        &path,
        "dim = 2\nfield = \"Q\"\nalpha = [[1, 0], [0, 1]]\n[[bracket]]\ni = 0\nj = 1\n[[bracket]]\ni = 0\nj = 1\n",
    )
    .unwrap();
    let (code, r) = report(&["check", &path]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("duplicate"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check"]).0, 2);
    assert_eq!(run(&["audit", "--dim", "5", "--bogus"]).0, 2);
    assert_eq!(run(&["check", "/nonexistent/file.alg"]).0, 2);
}

#[test]
fn not_hom_lie_exits_1() {
    let path = scratch("bad.alg");
    std::fs::write(
        &path,
        "dim = 3\nfield = \"Q\"\nalpha = [[0, 0, 0], [1, 1, 0], [0, 0, 1]]\n\
         [[bracket]]\ni = 0\nj = 1\ncoeffs = { 2 = 1 }\n\
         [[bracket]]\ni = 0\nj = 2\ncoeffs = { 1 = 1 }\n\
         [[bracket]]\ni = 1\nj = 2\ncoeffs = { 0 = 1 }\n",
    )
    .unwrap();
    let (code, r) = report(&["check", &path]);
    assert_eq!(code, 1);
    assert_eq!(r["verdicts"]["hom_jacobi"], false);
    assert!(r["verdicts"]["hom_jacobi_violation"]["triple"].is_array());
}

#[test]
fn classify_disguised_fixture() {
    let (code, r) = report(&["classify", &catalog("mu52_disguised.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["name"], "mu_5^2");
    assert_eq!(r["verdicts"]["verification"]["hom_jacobi"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = ["audit", "--dim", "5", "--samples", "10", "--seed", "11"];
    assert_eq!(run(&args), run(&args));
    let (_, r) = report(&args);
    assert_eq!(r["verdicts"]["table"].as_array().unwrap().len(), 2);
    let (_, other) = run(&["audit", "--dim", "5", "--samples", "10", "--seed", "12"]);
    assert!(other.contains("\"seed\": 12"));
}

#[test]
fn deform_then_classify() {
    let out = scratch("deformed.alg");
    let (code, r) =
        report(&["deform", "--n", "5", "--coeff", "1,4=1", "--coeff", "1,5=5", "--coeff", "2,5=1", "--out", &out]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["verdict"], true);
    let (code, r) = report(&["classify", &out]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["name"], "mu_6^2");
}

#[test]
fn change_and_back() {
    let out = scratch("changed.alg");
    let (code, r) = report(&["change", &catalog("mu52.alg"), "nu:2,3", "--out", &out]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["change"], "nu:2,3");
    let (code, r) = report(&["classify", &out]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["name"], "mu_5^2");
}

#[test]
fn law_mismatches_become_findings() {
    let base = scratch("psi6.alg");
    report(&["deform", "--n", "5", "--coeff", "1,4=2", "--coeff", "1,5=3", "--coeff", "2,5=4", "--out", &base]);
    let (code, r) = report(&["change", &base, "sigma:1,2", "--law", "1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["law_matches"], true);
    let (_, r) = report(&["change", &base, "sigma:1,2", "--law", "0,0,0"]);
    assert_eq!(r["verdicts"]["law_matches"], false);
    assert_eq!(r["findings"][0]["kind"], "law_vs_conjugation");
}

#[test]
fn twist_variants() {
    let (code, r) =
        report(&["twist", &catalog("example32.alg"), "--variant", "yau", "--map", &catalog("example32_singular.map")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["nilpotent"], true);
    assert_eq!(r["verdicts"]["filiform"], false);
    let (code, r) =
        report(&["twist", &catalog("example32.alg"), "--variant", "yau", "--map", &catalog("example32_auto.map")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"]["filiform"], true);
    assert!(r["verdicts"]["series_contained"].as_array().unwrap().iter().all(|v| v == true));
    assert_eq!(run(&["twist", &catalog("example32.alg"), "--variant", "yau"]).0, 2);
}

#[test]
fn cocycle_dims() {
    let (code, r) = report(&["cocycle", &catalog("l4.alg"), "--arity", "2", "--basis"]);
    assert_eq!(code, 0);
    let v = &r["verdicts"];
    assert_eq!(v["basis"].as_array().unwrap().len() as u64, v["cocycle_dim"].as_u64().unwrap());
    assert_eq!(v["delta_squared_zero"], true);
}

#[test]
fn oracle_iso_over_f3() {
    let a = scratch("m0.alg");
    let b = scratch("m1.alg");
    report(&["deform", "--n", "4", "--field", "Fp:3", "--out", &a]);
    report(&["deform", "--n", "4", "--field", "Fp:3", "--coeff", "1,4=1", "--out", &b]);
    let (code, r) = report(&["oracle", "iso", &a, &b, "--adapted"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdicts"]["isomorphic"], false);
    assert_eq!(r["verdicts"]["candidates"], 2 * 81 * 2 * 27);
    let (code, r) = report(&["oracle", "iso", &catalog("mu52.alg"), &catalog("mu52_disguised.alg"), "--p", "5"]);
    assert_eq!(code, 2, "{r}");
}

#[test]
fn every_fixture_loads() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "catalog"].iter().collect();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "alg") {
            let (code, _) = run(&["check", &path.display().to_string()]);
            assert!(code == 0 || code == 1, "{}", path.display());
        }
    }
}
