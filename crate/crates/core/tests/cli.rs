use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qplane(args: &[&str], dir: &Path) -> (Output, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qplane")).args(args).current_dir(dir).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("z2.lsq"), "2\n0 1\n1 0\n").unwrap();
    std::fs::write(dir.path().join("v4.lsq"), "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n").unwrap();
    std::fs::write(dir.path().join("sample.bg3"), "3 2 2\n1 0 1\nT 0 0 0\nT 1 1 0\nT 2 0 1\n").unwrap();
    dir
}

#[test]
fn plane_then_coordinatize_then_rebuild() {
    let dir = setup();
    let (out, v) = qplane(&["plane", "--field", "2", "--ext", "2", "--output", "pg4.pln"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["points"], 21);
    let (out, v) = qplane(&["validate", "pg4.pln"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{v}");
    let (out, v) = qplane(&["coordinatize", "pg4.pln", "--quadrangle", "20", "16", "0", "5", "--output", "r.trn"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["result"]["linear"], true);
    let (out, v) = qplane(&["plane", "--from-ternary", "r.trn"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["inputs"][0]["path"], "r.trn");
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn thicken_writes_expansion() {
    let dir = setup();
    let (out, v) = qplane(&["thicken", "sample.bg3", "--output", "big.bg3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["bound_holds"], true);
    let (out, v) = qplane(&["validate", "big.bg3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["biased_expansion"], true);
}

#[test]
fn matroid_circuits_agree_with_catalog() {
    let dir = setup();
    for kind in ["G", "Gfull", "L", "L0"] {
        let (out, v) = qplane(&["matroid", "sample.bg3", "--kind", kind, "--circuits"], dir.path());
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(v["result"]["catalog_agrees"], true, "{kind}");
    }
}

#[test]
fn embed_verdicts_and_exit_codes() {
    let dir = setup();
    let (out, v) = qplane(&["embed", "--mode", "planar", "--field", "4", "--quasigroup", "v4.lsq"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["points_in_plane"], true);
    let (out, _) = qplane(&["embed", "--mode", "planar", "--field", "3", "--quasigroup", "v4.lsq"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let (out, _) = qplane(&["embed", "--mode", "lift", "--field", "6", "--quasigroup", "z2.lsq"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let (out, _) = qplane(&["embed", "--mode", "sideways", "--field", "2", "--quasigroup", "z2.lsq"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs_and_jobs() {
    let dir = setup();
    let args = ["embed", "--mode", "frame", "--field", "3", "--quasigroup", "z2.lsq", "--all", "--verify"];
    let (a, _) = qplane(&args, dir.path());
    let (b, _) = qplane(&args, dir.path());
    assert_eq!(a.stdout, b.stdout);
    let mut par = args.to_vec();
    par.extend(["--jobs", "3"]);
    let (c, v) = qplane(&par, dir.path());
    let av: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(av["result"], v["result"]);
    assert!(c.status.success());
    let ws = v["result"]["witnesses"].as_array().unwrap();
    assert!(ws.len() > 1);
    assert!(ws.iter().all(|w| w["rechecked"] == true));
}

#[test]
fn selftest_subset() {
    let dir = setup();
    let (out, v) = qplane(&["selftest", "--only", "1", "--only", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{v}");
    let lines = v["result"]["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].as_str().unwrap().starts_with("PASS 1 "));
}
