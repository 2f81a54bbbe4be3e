use std::process::{Command, Output};

use serde_json::Value;

fn swancond(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swancond"))
        .args(args)
        .env_remove("SWANCOND_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn swan_example() {
    let out = swancond(&["swan", "--p", "2", "--m", "0", "--alpha", "[[[-2,1]]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["swan"], 1);
    assert_eq!(v["certified"], true);
    assert_eq!(v["reduced"][0], "t^-1");
}

#[test]
fn sympow_example() {
    let out = swancond(&["sympow-swan", "--p", "2", "--m", "0", "--d", "2", "--alpha", "[[[-3,1]]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["upstairs"].as_i64(), v["exceptional"].as_i64()), (Some(3), Some(1)));
    assert_eq!(v["certified"], true);
}

#[test]
fn min_degree_example() {
    let out = swancond(&["min-degree", "--genus", "0", "--deg-mod", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    assert_eq!(swancond(&["min-degree", "--genus", "1", "--deg-mod", "1"]).stdout, b"2\n");
}

#[test]
fn lambda_and_omega_commands() {
    let out = swancond(&["lambda", "--p", "2", "--d", "2", "--alpha", "[[[-3,1]]]"]);
    let v = json(&out);
    assert_eq!(v["lambda"][0], "(S1*S2 + S1^3)/S2^3");
    assert_eq!(v["v_exceptional"], -1);
    let out = swancond(&["omega-basis", "--p", "5", "--d", "2", "--i", "1"]);
    assert_eq!(json(&out)["omega"]["text"], "(1)·dS2/S2");
    let out = swancond(&["omega-basis", "--p", "5", "--d", "2", "--i", "-2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn blprod_and_rsw_commands() {
    let out = swancond(&["blprod-swan", "--p", "3", "--alpha1", "[[[-2,1]]]", "--alpha2", "[[[-1,2]]]"]);
    let v = json(&out);
    assert_eq!((v["swan"].as_i64(), v["n1"].as_i64(), v["n2"].as_i64()), (Some(2), Some(2), Some(1)));
    let out = swancond(&["rsw", "--p", "3", "--m", "1", "--alpha", "[[[-1,1]],[]]"]);
    let v = json(&out);
    assert_eq!(v["swan"], 3);
    assert_eq!(v["rsw"]["v_log"], -3);
}

#[test]
fn input_errors_exit_one_with_position() {
    let out = swancond(&["swan", "--p", "2", "--alpha", "[[[-2,1]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 8"));
    assert_eq!(swancond(&["swan", "--p", "4", "--alpha", "[[]]"]).status.code(), Some(1));
    assert_eq!(swancond(&["swan", "--p", "2", "--m", "1", "--alpha", "[[]]"]).status.code(), Some(1));
    assert_eq!(swancond(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(swancond(&["verify", "bogus"]).status.code(), Some(1));
    assert_eq!(swancond(&["min-degree", "--genus", "-1", "--deg-mod", "0"]).status.code(), Some(1));
    assert_eq!(swancond(&["lambda", "--p", "2", "--d", "4", "--alpha", "[[]]"]).status.code(), Some(1));
    assert_eq!(swancond(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_reports_are_reproducible() {
    let args = ["verify", "cor-witt2", "--p", "2,3", "--d", "2,3", "--max-sw", "6", "--seed", "7"];
    let a = swancond(&args);
    let b = swancond(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["seed"], 7);
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["fail"], 0);
}

#[test]
fn verify_table_format() {
    let out = swancond(&["verify", "anbasis", "--d", "2,3", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# suites: anbasis  seed:"));
    assert_eq!(text.lines().filter(|l| l.ends_with("PASS")).count(), 30);
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = swancond(&["cache", "build", "--p", "3", "--m", "2", "--cache-dir", d]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("witt-p3-len3.txt").exists());

    swancond(&["cache", "build", "--p", "2", "--m", "1", "--cache-dir", d]);
    let out = swancond(&["--format", "table", "cache", "inspect", "--p", "2", "--m", "1", "--cache-dir", d]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("S_1 = X1 + Y1 - X0*Y0"));

    // Cached polynomials also serve computations.
    let out = Command::new(env!("CARGO_BIN_EXE_swancond"))
        .args(["swan", "--p", "3", "--m", "2", "--alpha", "[[],[],[[-1,1]]]"])
        .env("SWANCOND_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(json(&out)["swan"], 1);

    let path = dir.path().join("witt-p2-len2.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("S1 ", "S1  ")).unwrap();
    let out = swancond(&["cache", "inspect", "--p", "2", "--m", "1", "--cache-dir", d]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("checksum") || err.contains("corrupt"), "{err}");
    assert!(err.contains("cache build") || err.contains("rebuild"), "{err}");

    let out = swancond(&["cache", "clear", "--cache-dir", d]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["removed"], 2);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    assert_eq!(swancond(&["cache", "clear"]).status.code(), Some(1));
}

#[test]
fn strict_mode_contract() {
    let out = swancond(&["--strict", "swan", "--p", "3", "--alpha", "[[[-4,1],[2,1]]]"]);
    assert_eq!(out.status.code(), Some(0));
    let out = swancond(&["verify", "dprod", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
}
