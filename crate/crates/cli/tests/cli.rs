use std::process::{Command, Output};

use serde_json::Value;

fn lgcy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgcy")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn onepoint_genus_one() {
    let v = json(&lgcy(&["--no-cache", "gw", "onepoint", "--genus", "1"]));
    assert_eq!(v["version"], 1);
    let p = &v["records"][0]["payload"];
    assert_eq!(p[0]["a"], 1);
    assert_eq!(p[0]["coeff"], "-1/24");
}

#[test]
fn exit_codes() {
    let bad_psi = lgcy(&["--no-cache", "gw", "onepoint", "--genus", "2", "--psi", "1"]);
    assert_eq!(bad_psi.status.code(), Some(2));
    let low_order = lgcy(&["--no-cache", "--z-order", "4", "gw", "onepoint", "--genus", "3"]);
    assert_eq!(low_order.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&low_order.stderr).contains("need at least 6"));
    let fjrw = lgcy(&["--order", "5", "fjrw", "invariants", "--max", "12"]);
    assert_eq!(fjrw.status.code(), Some(3));
}

#[test]
fn cache_files_are_reused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "gw", "npoint", "--legs", "2", "--psi", "0,2", "--connected"];
    let first = lgcy(&args);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = lgcy(&args);
    assert_eq!(first.stdout, second.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_lgcy"))
        .env("CACHE_DIR", d)
        .args(&args[2..])
        .output()
        .unwrap();
    assert_eq!(env.stdout, first.stdout);
    assert_eq!(json(&first)["records"][0]["genus"], 2);
}

#[test]
fn verify_single_suite_passes() {
    let v = json(&lgcy(&["--no-cache", "verify", "chazy"]));
    assert_eq!(v["kind"], "verification");
    assert_eq!(v["passed"], true);
}

#[test]
fn csv_output() {
    let out = lgcy(&["--no-cache", "--format", "csv", "fjrw", "onepoint", "--genus", "2", "--order", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("fjrw_cubic,2,phi psi^2,true,s_series,,,,1,1/1080\n"), "{text}");
}
