use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use gentrig::DoubleDouble;
use gentrig_cli::{run, Cli, CliError};
use serde_json::Value;

/// Runs the command line in-process; returns stdout and the result.
fn call(argv: &[&str]) -> (String, Result<(), CliError>) {
    let cli = Cli::try_parse_from(std::iter::once("gentrig").chain(argv.iter().copied())).expect("arguments parse");
    let mut out = Vec::new();
    let res = run(&cli, None, &mut out);
    (String::from_utf8(out).unwrap(), res)
}

fn json_lines(argv: &[&str]) -> Vec<Value> {
    let mut args = vec!["--format", "json"];
    args.extend_from_slice(argv);
    let (out, res) = call(&args);
    res.unwrap();
    out.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn bin(argv: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gentrig"))
        .args(argv)
        .env_remove("GENTRIG_PRECISION")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn config(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn eval_encloses_cosine_integral() {
    // ci(0, z) = −Ci(z); Ci(20) = 0.0444198208453533165...
    let rec = &json_lines(&["eval", "--fn", "ci", "--a", "0", "--z", "20"])[0];
    let v = rec["value"]["re"].as_f64().unwrap();
    let b = rec["error_bound"].as_f64().unwrap();
    assert!((v + 0.044_419_820_845_353_316).abs() <= b, "{rec}");
    assert_eq!(rec["truncation"], "optimal");
    assert!(rec["terms_used"].as_u64().unwrap() > 0);
}

#[test]
fn records_round_trip_through_json() {
    let argv: [&[&str]; 4] = [
        &["eval", "--fn", "phi", "--a", "-1", "--z", "10:30"],
        &["zeros", "--a", "0", "--alpha", "0.5", "--k-to", "4", "--refine"],
        &["terminant", "--p", "2", "--z", "5:60"],
        &["coeffs", "--kind", "c", "--n", "0..4"],
    ];
    for a in argv {
        let mut args = vec!["--format", "json"];
        args.extend_from_slice(a);
        let (out, res) = call(&args);
        res.unwrap();
        for line in out.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line);
        }
    }
}

#[test]
fn extended_precision_strings_are_exact() {
    let rec = &json_lines(&["--precision", "extended", "eval", "--fn", "phi", "--z", "20"])[0];
    let s = rec["value"]["re"].as_str().unwrap();
    let v: DoubleDouble = s.parse().unwrap();
    assert_eq!(v.to_roundtrip_string(), s);
    assert!(v.lo() != 0.0);
    // agrees with the double-precision run to f64 accuracy
    let d = json_lines(&["eval", "--fn", "phi", "--z", "20"])[0]["value"]["re"].as_f64().unwrap();
    assert!((v.hi() - d).abs() < 1e-13);
}

#[test]
fn complex_values_are_objects() {
    let rec = &json_lines(&["oracle", "--fn", "gamma", "--a", "0.5", "--z", "0,-5"])[0];
    assert!(rec["value"]["re"].is_f64() && rec["value"]["im"].is_f64());
    let polar = &json_lines(&["eval", "--fn", "f", "--z", "2:90"])[0]["z"];
    assert!(polar["re"].as_f64().unwrap().abs() < 1e-15);
    assert_eq!(polar["im"].as_f64().unwrap(), 2.0);
}

#[test]
fn coefficient_strings() {
    let rec = &json_lines(&["coeffs", "--kind", "t", "--n", "5"])[0];
    let want = [
        "0/1", "39916800/1", "112289760/1", "127178832/1", "77504328/1", "28332282/1", "6494092/1", "939774/1",
        "83688/1", "4290/1", "110/1", "1/1",
    ];
    let got: Vec<&str> = rec["coefficients"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(got, want);
    let c2 = &json_lines(&["coeffs", "--kind", "c", "--n", "2"])[0];
    assert_eq!(c2["coefficients"][4], "80/3");
    assert_eq!(json_lines(&["coeffs", "--kind", "d", "--n", "3"]).len(), 3);
}

#[test]
fn phase_table_rows() {
    let rows = json_lines(&["table", "--fn", "phi", "--a", "0", "--z-from", "5", "--z-to", "50", "--z-step", "5"]);
    assert_eq!(rows.len(), 10);
    let keys: Vec<Vec<&String>> = rows.iter().map(|r| r.as_object().unwrap().keys().collect()).collect();
    assert!(keys.iter().all(|k| *k == keys[0]));
    assert_eq!(keys[0], ["fn", "a", "z", "value", "error_bound", "terms_used"]);
    let (csv, res) = call(&["--format", "csv", "table", "--fn", "phi"]);
    res.unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 11);
    // 17 significant digits
    let value = lines[1].split(',').nth(3).unwrap();
    assert_eq!(value.split('e').next().unwrap().replace(['.', '-'], "").len(), 17, "{value}");
}

#[test]
fn coefficient_table_matches_reference() {
    let rows = json_lines(&["table", "--fn", "coeffs-t"]);
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[2]["polynomial"], "x^5 + 20x^4 + 110x^3 + 210x^2 + 120x");
    assert_eq!(rows[3]["polynomial"], "x^7 + 42x^6 + 560x^5 + 3248x^4 + 8946x^3 + 11256x^2 + 5040x");
}

#[test]
fn zero_table_is_monotone() {
    let rows = json_lines(&["table", "--fn", "zeros", "--a", "0.5"]);
    let z: Vec<f64> = rows.iter().map(|r| r["refined"].as_f64().unwrap()).collect();
    assert!(z.len() >= 12);
    assert!(z.windows(2).all(|w| w[0] < w[1]), "{z:?}");
}

#[test]
fn verify_tables_report() {
    let rec = &json_lines(&["verify", "--suite", "tables"])[0];
    assert_eq!(rec["suite"], "tables");
    assert_eq!(rec["cases_run"], 12);
    assert_eq!(rec["cases_failed"], 0);
}

#[test]
fn verify_zero_certificates() {
    let cfg = config("zeros.conf", "zero_a = 0\nalpha = 0.5\nk = 3..12\n");
    let rec = &json_lines(&["--config", cfg.to_str().unwrap(), "verify", "--suite", "zeros"])[0];
    assert_eq!(rec["cases_failed"], 0);
    assert!(rec["worst_margin"].as_f64().unwrap() > 0.0);
    assert!(rec["cases_run"].as_u64().unwrap() >= 20);
}

#[test]
fn verify_is_reproducible() {
    let cfg = config("small.conf", "a = -1, 0.5\nz = 10, 20\nz_complex = 8\nargs = pi/4\norders = 1..4\n");
    let path = cfg.to_str().unwrap();
    let strip = |mut v: Vec<Value>| {
        for r in &mut v {
            r.as_object_mut().unwrap().remove("elapsed");
        }
        v
    };
    let first = strip(json_lines(&["--config", path, "verify", "--suite", "bounds"]));
    let second = strip(json_lines(&["--config", path, "verify", "--suite", "bounds"]));
    assert_eq!(first, second);
    assert!(first[0]["worst_margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn config_sets_format() {
    let cfg = config("fmt.conf", "format = csv\n");
    let (out, res) = call(&["--config", cfg.to_str().unwrap(), "coeffs", "--kind", "t", "--n", "1"]);
    res.unwrap();
    assert!(out.starts_with("kind,n,polynomial,coefficients\n"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["coeffs", "--kind", "t", "--n", "2"]).0, 0);
    // usage: unknown flag, malformed number, out-of-domain order
    assert_eq!(bin(&["eval", "--fn", "phi", "--z", "3", "--bogus"]).0, 2);
    assert_eq!(bin(&["eval", "--fn", "phi", "--z", "abc"]).0, 2);
    let (code, _, err) = bin(&["eval", "--fn", "phi", "--a", "2", "--z", "20"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(bin(&["--format", "xml", "coeffs", "--kind", "t", "--n", "1"]).0, 2);
    // non-convergence: the quadrature cannot resolve f at this point
    let (code, _, err) = bin(&["oracle", "--fn", "f", "--a", "-300", "--z", "0.001"]);
    assert_eq!(code, 3, "{err}");
    // a suite that fails: too few samples to see every sign change
    let cfg = config("coarse.conf", "zero_a = 0\nalpha = 0\nk = 3..4\nsamples = 20\n");
    let (code, out, _) = bin(&["--config", cfg.to_str().unwrap(), "--format", "json", "verify", "--suite", "zeros"]);
    assert_eq!(code, 1);
    let rec: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert!(rec["cases_failed"].as_u64().unwrap() > 0);
}

#[test]
fn precision_environment_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_gentrig"))
        .args(["--format", "json", "eval", "--fn", "phi", "--z", "20"])
        .env("GENTRIG_PRECISION", "extended")
        .output()
        .unwrap();
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rec["value"]["re"].is_string());
    let out = Command::new(env!("CARGO_BIN_EXE_gentrig"))
        .args(["--precision", "double", "--format", "json", "eval", "--fn", "phi", "--z", "20"])
        .env("GENTRIG_PRECISION", "extended")
        .output()
        .unwrap();
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rec["value"]["re"].is_f64());
}
