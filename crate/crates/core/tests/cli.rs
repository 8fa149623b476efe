mod common;

use std::path::Path;
use std::process::Command;

use mamlab::io::InputFile;
use mamlab::scalar::{dot, parse_scalar, Scalar, SymbolTable};
use mamlab::structure::{verify_g1_witness, verify_g2_witness};
use num_bigint::BigInt;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mamlab"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap())
}

/// Write fixture `name` into `dir` and return the path.
fn fixture_file(dir: &Path, name: &str) -> String {
    let (code, text) = run(&["fixtures", name]);
    assert_eq!(code, 0);
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn scalars(v: &Value, t: &SymbolTable) -> Vec<Scalar> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| parse_scalar(x.as_str().unwrap(), t).unwrap())
        .collect()
}

fn ints(v: &Value) -> Vec<BigInt> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn fixture_files_round_trip() {
    for name in ["torus-1", "hopf-generic", "square", "simplex-4", "overlap"] {
        let (_, text) = run(&["fixtures", name]);
        let parsed = InputFile::from_json(&text).unwrap();
        let again = InputFile::from_json(&parsed.to_json()).unwrap();
        assert_eq!(parsed, again, "{name}");
        assert_eq!(parsed.to_json(), mamlab::fixtures::fixture(name).unwrap().to_json());
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let hg = fixture_file(dir.path(), "hopf-generic");
    let sq = fixture_file(dir.path(), "square");
    for args in [
        vec!["psi-sample", hg.as_str(), "--seed", "5"],
        vec!["kahler-audit", sq.as_str(), "--seed", "2", "--samples", "20"],
        vec!["quadrics", sq.as_str(), "--seed", "9", "--samples", "10"],
    ] {
        assert_eq!(run(&args).1, run(&args).1, "{args:?}");
    }
    let a = run(&["psi-sample", &hg, "--seed", "1"]).1;
    let b = run(&["psi-sample", &hg, "--seed", "2"]).1;
    assert_ne!(a, b);
}

#[test]
fn sampled_psi_passes_psi_check() {
    let dir = tempfile::tempdir().unwrap();
    let hg = fixture_file(dir.path(), "hopf-generic");
    let (code, r) = report(&["psi-sample", &hg, "--seed", "4"]);
    assert_eq!(code, 0);
    let mut input: Value = serde_json::from_str(&std::fs::read_to_string(&hg).unwrap()).unwrap();
    input["psi"] = r["result"]["psi"].clone();
    let path = dir.path().join("sampled.json");
    std::fs::write(&path, input.to_string()).unwrap();
    let (code, r) = report(&["psi-check", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["ok"], true);
}

#[test]
fn genericity_witnesses_verify_independently() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["genericity", &fixture_file(dir.path(), "hopf-irr")]);
    assert_eq!(code, 1);
    let w = ints(&r["result"]["g1"]["witness"]);
    assert!(verify_g1_witness(&common::fixture("hopf-irr").fan, &w).unwrap());

    let (_, r) = report(&["genericity", &fixture_file(dir.path(), "hopf-rational")]);
    let w = ints(&r["result"]["g2"]["witness"]);
    assert!(verify_g2_witness(&common::fixture("hopf-rational").fan, &w));

    let (code, r) = report(&["genericity", &fixture_file(dir.path(), "hopf-generic")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["subspace"]["status"]["verdict"], "verified");
}

#[test]
fn overlap_witness_is_a_common_point() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["validate-fan", &fixture_file(dir.path(), "overlap")]);
    assert_eq!(code, 1);
    let f = common::fixture("overlap").fan;
    let t = f.table();
    let o = &r["result"]["overlaps"][0];
    let combo = |face: &Value, coeffs: &Value| {
        let idx: Vec<usize> = face
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap() as usize)
            .collect();
        let c = scalars(coeffs, t);
        assert!(c.iter().all(|x| x.sign(t, 256).unwrap() > 0));
        (0..f.n())
            .map(|r| {
                idx.iter()
                    .zip(&c)
                    .fold(Scalar::zero(), |acc, (&i, k)| &acc + &(k * &f.vector(i)[r]))
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(combo(&o["first"], &o["mu"]), combo(&o["second"], &o["nu"]));
}

#[test]
fn weak_normal_certificate_rechecks() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["square", "hopf-generic", "simplex-3"] {
        let (code, r) = report(&["weak-normal", &fixture_file(dir.path(), name)]);
        assert_eq!(code, 0, "{name}");
        let f = common::fixture(name).fan;
        let t = f.table();
        let cert = &r["result"]["certificate"];
        let b = scalars(&cert["offsets"], t);
        for cone in cert["cones"].as_array().unwrap() {
            let face: Vec<usize> = cone["I"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as usize)
                .collect();
            let u = scalars(&cone["u"], t);
            let beta = scalars(&cone["beta"], t);
            for i in 1..=f.m() {
                let v = &dot(f.vector(i), &u) + &b[i - 1];
                assert_eq!(v, beta[i - 1]);
                if face.contains(&i) {
                    assert!(v.is_zero());
                } else if !v.is_zero() {
                    assert!((&v - &Scalar::from_int(2)).sign(t, 4096).unwrap() >= 0, "{name}");
                }
            }
        }
    }
}

#[test]
fn incomplete_fan_has_no_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["weak-normal", &fixture_file(dir.path(), "quadrant")]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["reason"], "fan is not complete");
}

#[test]
fn hopf_moduli_enclose_the_rational_value() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["hopf", &fixture_file(dir.path(), "hopf-rational")]);
    assert_eq!(code, 0);
    let target = (-std::f64::consts::TAU).exp();
    for m in r["result"]["moduli"].as_array().unwrap() {
        let (lo, hi) = (m[0].as_f64().unwrap(), m[1].as_f64().unwrap());
        assert!(lo <= target && target <= hi);
    }
}

#[test]
fn torus_periods_on_the_square_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["torus-periods", &fixture_file(dir.path(), "torus-1")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["real_rank"], 2);
}

#[test]
fn bad_input_exits_with_input_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"schema\": 7}").unwrap();
    let (code, r) = report(&["complete", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["reason"], "invalid-input");

    let sq = fixture_file(dir.path(), "square");
    let (code, _) = report(&["normal-fan", &fixture_file(dir.path(), "torus-1")]);
    assert_eq!(code, 2);
    let out = dir.path().join("report.json");
    let (code, stdout) = run(&["complete", &sq, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(saved["ok"], true);
}

#[test]
fn dependent_symbols_raise_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let mut input: Value = serde_json::from_str(&run(&["fixtures", "square"]).1).unwrap();
    input["symbols"] = serde_json::json!([{ "name": "s", "sqrt": "2" }]);
    input["vectors"][0] = serde_json::json!(["s", "0"]);
    let path = dir.path().join("sqrt.json");
    std::fs::write(&path, input.to_string()).unwrap();
    let out = bin().args(["complete", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["warnings"][0].as_str().unwrap().contains("integer relation"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    let (_, quiet) = report(&["complete", &fixture_file(dir.path(), "hopf-generic")]);
    assert!(quiet.get("warnings").is_none());
}
