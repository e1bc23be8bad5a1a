use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barriers-lab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn verify_is_byte_identical() {
    let a = lab(&["verify", "--suite", "all-desk", "--seed", "7"]);
    let b = lab(&["verify", "--suite", "all-desk", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "report v1");
    assert_eq!(v["suite"], "all-desk");
}

#[test]
fn verify_formats_and_unknown_suite() {
    let csv = lab(&["verify", "--suite", "tensor-bounds", "--format", "csv"]);
    assert!(csv.status.success());
    assert!(String::from_utf8(csv.stdout).unwrap().lines().count() > 10);

    let bad = lab(&["verify", "--suite", "nope"]);
    assert!(!bad.status.success());
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.contains("all-desk"), "{err}");
}

#[test]
fn gen_writes_pcm() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("rep.pcm");
    assert!(lab(&["gen", "rep", "--len", "4", "--periodic", "--out", p(&f)]).status.success());
    assert_eq!(std::fs::read_to_string(&f).unwrap(), "4 4\n1100\n0110\n0011\n1001\n");

    let out = lab(&["gen", "composite", "--len", "2"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("8 8\n"));
    assert!(!lab(&["gen", "composite", "--len", "1"]).status.success());
}

#[test]
fn hgp_manifest_logicals_and_barrier() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.pcm");
    assert!(lab(&["gen", "rep", "--len", "2", "--periodic", "--out", p(&rep)]).status.success());
    let factors = [p(&rep); 3].join(",");
    let out = dir.path().join("toric3");
    let manifest = json(&["hgp", "--dim", "3", "--factors", &factors, "--out", p(&out)]);
    assert_eq!(manifest["params"]["n"], 24);
    assert_eq!(manifest["params"]["k"], 3);
    assert!(out.join("meta_x.pcm").exists());

    let m = out.join("manifest.json");
    let z = json(&["logicals", "--code", p(&m), "--kind", "z", "--canonical"]);
    assert_eq!(z["count"], 3);
    let label = z["operators"][0]["label"].as_str().unwrap().to_string();

    let b = json(&["barrier", "--code", p(&m), "--kind", "z", "--target", &label, "--best-first"]);
    assert_eq!(b["value"], 4);
    assert_eq!(b["exact"], false);
    let b = json(&["--cap-exact", "24", "barrier", "--code", p(&m), "--kind", "z", "--target", &label, "--exact"]);
    assert!(!lab(&["barrier", "--code", p(&m), "--kind", "z", "--target", &label, "--exact"]).status.success());
    assert_eq!(b["value"], 4);
    assert_eq!(b["exact"], true);

    let plain = json(&["logicals", "--code", p(&m), "--kind", "x"]);
    assert_eq!(plain["count"], 3);

    // best-first needs a target
    assert!(!lab(&["barrier", "--code", p(&m), "--kind", "z", "--best-first"]).status.success());
}

#[test]
fn hgp_rejects_wrong_factor_count() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.pcm");
    assert!(lab(&["gen", "rep", "--len", "2", "--out", p(&rep)]).status.success());
    let out = lab(&["hgp", "--dim", "3", "--factors", p(&rep), "--out", p(&dir.path().join("x"))]);
    assert!(!out.status.success());
}

#[test]
fn classical_barrier_and_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.pcm");
    assert!(lab(&["gen", "rep", "--len", "5", "--periodic", "--out", p(&rep)]).status.success());
    let b = json(&["barrier", "--code", p(&rep), "--kind", "classical"]);
    assert_eq!(b["value"], 2);
    assert_eq!(b["exact"], true);
    assert_eq!(b["endpoint_weight"], 5);

    let three = dir.path().join("rep3.pcm");
    assert!(lab(&["gen", "rep", "--len", "3", "--periodic", "--out", p(&three)]).status.success());
    let t = json(&["tensor", "--a", p(&three), "--b", p(&three), "--measure"]);
    assert_eq!(t["measured"]["value"], 8);
    assert_eq!(t["upper_strip"], 8);
    assert_eq!(t["witness_path"].as_array().unwrap().len(), t["measured"]["flips"].as_array().unwrap().len());

    let capped = lab(&["--cap-exact", "4", "barrier", "--code", p(&rep), "--kind", "classical"]);
    assert!(!capped.status.success());
}

#[test]
fn confine_scans() {
    let dir = tempfile::tempdir().unwrap();
    let comp = dir.path().join("comp.pcm");
    assert!(lab(&["gen", "composite", "--len", "2", "--out", p(&comp)]).status.success());
    let r = json(&["confine", "--code", p(&comp), "--kind", "z", "--wmax", "4", "--f", "x", "--t", "4"]);
    assert!(r["violation_count"].as_u64().unwrap() > 0);
    assert_eq!(r["complete"], true);

    let s = json(&["confine", "--code", p(&comp), "--kind", "z", "--wmax", "2", "--f", "x^2/4", "--t", "3", "--soundness"]);
    assert!(s.is_object());
}
