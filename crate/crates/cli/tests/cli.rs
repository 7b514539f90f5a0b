use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cyltor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyltor"))
        .args(args)
        .env_remove("CYLTOR_DEPTH")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rerun(out: &Output) -> Output {
    let argv: Vec<String> = report(out)["command"]["argv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let args: Vec<&str> = argv.iter().map(String::as_str).collect();
    cyltor(&args)
}

#[test]
fn theta_of_p_one() {
    let out = cyltor(&["--surface", "1,2", "--mode", "unit", "theta", "--p", "1 - x1 + x1*y1", "--mu", "1 - x1 + x1*y1"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["theta"], 1);
    assert_eq!(r["settings"]["mode"], "unit");
    assert_eq!(r["surface"], serde_json::json!([1, 2]));
}

#[test]
fn norm_test_accepts_a_norm() {
    let out = cyltor(&["--surface", "1,2", "norm-test", "--p", "(1 - x1 + x1*y1)*(1 - x1^-1 + x1^-1*y1^-1)"]);
    assert!(out.status.success());
    assert_eq!(report(&out)["norm_member"], "yes");

    let out = cyltor(&["--surface", "1,2", "norm-test", "--p", "1 - x1 + x1*y1"]);
    assert_eq!(report(&out)["norm_member"], "no");
}

#[test]
fn exit_codes() {
    let out = cyltor(&["pretzel", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "rejected");
    assert!(r["error"]["message"].as_str().unwrap().contains("(r+s)(t+s)-s^2 = 3"));

    let out = cyltor(&["--surface", "1,2", "factor", "--p", "1 + + x1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "usage");

    assert_eq!(cyltor(&["factor", "--p", "1 - x1"]).status.code(), Some(1));
    assert_eq!(cyltor(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(cyltor(&["--help"]).status.code(), Some(0));
    assert_eq!(cyltor(&["pretzel-search", "4"]).status.code(), Some(1));
}

#[test]
fn fox_reports_the_pretzel_matrix() {
    let out = cyltor(&["fox", "--rank", "2", "--words", "a^2(ab^-1)^3, b(ab^-1)^3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["exponent_matrix"], serde_json::json!([[5, 3], [-3, -2]]));
    assert_eq!(r["determinant"], "-1");
    assert_eq!(r["cylinder"], true);
    assert_eq!(r["torsion"], "-x2^2 + x1^2*x2 + x1^3");
}

#[test]
fn pretzel_and_family_search() {
    let out = cyltor(&["pretzel", "5", "8", "-3"]);
    assert!(out.status.success());
    assert_eq!(report(&out)["validity"], 1);

    let out = cyltor(&["pretzel-search", "3"]);
    assert_eq!(
        report(&out)["triples"],
        serde_json::json!([[4, 13, -3], [5, 8, -3], [8, 5, -3], [13, 4, -3]])
    );
}

#[test]
fn reports_rerun_byte_for_byte() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["--surface", "1,2", "profile", "--p", "(1 - x1 + x1*y1)^2*(1 + y1)"],
        vec!["--surface", "1,1", "--samples", "2048", "--seed", "99", "mahler", "--p", "1 + y1 + y2"],
        vec!["--surface", "1,2", "factor", "--p", "x1^2 - 1", "--den", "1 + y1"],
        vec!["ma", "3"],
    ];
    for args in cases {
        let first = cyltor(&args);
        assert!(first.status.success(), "{args:?}");
        let second = rerun(&first);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn mahler_seed_matters_only_for_sampling() {
    let a = cyltor(&["--surface", "1,1", "--samples", "1024", "--seed", "1", "mahler", "--p", "1 + y1 + y2"]);
    let b = cyltor(&["--surface", "1,1", "--samples", "1024", "--seed", "2", "mahler", "--p", "1 + y1 + y2"]);
    assert_ne!(report(&a)["mahler"]["value"], report(&b)["mahler"]["value"]);

    let exact = cyltor(&["--surface", "0,2", "mahler", "--p", "x1^2 - 3*x1 + 1"]);
    let m = &report(&exact)["mahler"];
    assert_eq!(m["method"], "roots");
    assert!((m["value"].as_f64().unwrap() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
}

#[test]
fn descriptor_pipeline_through_files() {
    let m1 = scratch("m1.json");
    let m2 = scratch("m2.json");
    std::fs::write(&m1, cyltor(&["ma", "1"]).stdout).unwrap();
    std::fs::write(&m2, cyltor(&["ma", "2"]).stdout).unwrap();
    let (m1, m2) = (m1.to_str().unwrap(), m2.to_str().unwrap());

    let out = cyltor(&["stack", m1, m2]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stacked = scratch("stacked.json");
    std::fs::write(&stacked, &out.stdout).unwrap();
    let tau = report(&out)["cylinder"]["tau_num"].as_str().unwrap().to_string();
    assert!(tau.contains("x1"));

    let inv = scratch("inverse.json");
    std::fs::write(&inv, cyltor(&["invert", stacked.to_str().unwrap()]).stdout).unwrap();
    let out = cyltor(&["stack", stacked.to_str().unwrap(), inv.to_str().unwrap()]);
    let c = &report(&out)["cylinder"];
    assert_eq!(c["tau_num"], "1");
    assert_eq!(c["tau_den"], "1");

    let out = cyltor(&["tie-knot", m1, "--alexander", "t^2-3t+1", "--at", "x1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let c = &report(&out)["cylinder"];
    assert_eq!(c["genus"], 1);

    let out = cyltor(&["glue", m1, m2, "--c", "2", "--cprime", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let c = &report(&out)["cylinder"];
    assert_eq!(c["genus"], 2);
    assert_eq!(c["boundary"], 2);

    let out = cyltor(&["stack", m1, "/nonexistent/cylinder.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mapping_class_validates_phi() {
    let out = cyltor(&["--surface", "1,1", "mapping-class", "--phi", "[[1,1],[0,1]]"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["cylinder"]["tau_num"], "1");

    let out = cyltor(&["--surface", "1,1", "mapping-class", "--phi", "[[2,0],[0,1]]"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn depth_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cyltor"))
        .args(["--surface", "1,2", "distinguish", "--p", "1 + x1", "--q", "1 + x1^-1"])
        .env("CYLTOR_DEPTH", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(report(&out)["settings"]["depth"], 2);
}
