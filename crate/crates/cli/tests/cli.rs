//! Command-line behaviour: exit codes, flags and JSON output.

use std::process::{Command, Output};

use serde_json::Value;

fn gl2ode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl2ode")).args(args).env_remove("GL2_PRECISION").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_rational_equation_passes() {
    let out = gl2ode(&["classify", "--expr", "5*y4^2/(4*y3)", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["input"]["order"], 5);
    assert!(v["summary"]["fail"].as_u64() == Some(0));
}

#[test]
fn non_wunschmann_equation_fails() {
    let out = gl2ode(&["classify", "--expr", "y4^2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "fail" && !c["witness"].is_null()));
}

#[test]
fn malformed_input_exits_three() {
    let out = gl2ode(&["check", "--expr", "y4^^2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ParseError"));

    let out = gl2ode(&["check", "--expr", "y9", "--order", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ValidationError"));

    let out = gl2ode(&["check", "--entry", "no_such_entry"]);
    assert_eq!(out.status.code(), Some(3));

    let out = gl2ode(&["check", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn precision_flag_overrides_environment() {
    let base = ["classify", "--expr", "0", "--json"];
    let env = Command::new(env!("CARGO_BIN_EXE_gl2ode")).args(base).env("GL2_PRECISION", "80").output().unwrap();
    assert_eq!(json(&env)["input"]["precision"], 80);
    let both = Command::new(env!("CARGO_BIN_EXE_gl2ode"))
        .args(base)
        .args(["--precision", "70"])
        .env("GL2_PRECISION", "80")
        .output()
        .unwrap();
    assert_eq!(json(&both)["input"]["precision"], 70);
    assert_eq!(json(&gl2ode(&base))["input"]["precision"], 60);
}

#[test]
fn catalog_lists_entries_and_sources() {
    let out = gl2ode(&["catalog", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["notorsion_c0", "ex54", "exy4", "exw"] {
        assert!(names.contains(&n), "{n} missing from {names:?}");
    }
    let src = gl2ode(&["catalog", "--entry", "ex54", "--source"]);
    assert_eq!(src.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&src.stdout).contains("F = 5*y4^2/(4*y3)"));
}

#[test]
fn ode_file_input_is_read() {
    let dir = std::env::temp_dir().join(format!("gl2ode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ex.ode");
    std::fs::write(&path, "name = file_example\norder = 5\nF = 5*y4^2/(3*y3)\n").unwrap();
    let out = gl2ode(&["classify", "--ode", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["input"]["name"], "file_example");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timings_are_omitted_by_default() {
    let v = json(&gl2ode(&["classify", "--expr", "0", "--json"]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["millis"].is_null()));
    let t = json(&gl2ode(&["classify", "--expr", "0", "--json", "--timings"]));
    assert!(t["checks"].as_array().unwrap().iter().any(|c| !c["millis"].is_null()));
}

#[test]
fn invariants_demo_reports_every_invariant() {
    let out = gl2ode(&["invariants-demo", "--json"]);
    let v = json(&out);
    assert_eq!(v["invariants"].as_array().unwrap().len(), 11);
    assert_eq!(v["cartan_identities"]["exact_zero"], true);
}

#[test]
fn ree_samples_pass() {
    let out = gl2ode(&["ree", "--samples", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
}
