//! End-to-end behaviour of the `slopecert` binary: exit codes, reports and
//! certificate re-checking.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn slopecert(args: &[&str]) -> Output {
    slopecert_env(args, &[])
}

fn slopecert_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_slopecert"));
    cmd.args(args);
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("SLOPECERT_")) {
        cmd.env_remove(k);
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("slopecert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn identities_report_passes() {
    let out = slopecert(&["verify", "identities", "--primes", "3,5", "--max-u", "30"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["target"], "identities");
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["config"]["primes"], serde_json::json!([3, 5]));
    assert!(report["config_hash"].as_str().unwrap().len() == 64);
    assert!(report["config"].get("jobs").is_none());
}

#[test]
fn empty_grid_succeeds_with_no_checks() {
    let out = slopecert(&["verify", "matrices", "--primes", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["summary"]["checks"], 0);
}

#[test]
fn usage_and_configuration_errors_exit_with_two() {
    let config = scratch("bad-config.json");
    std::fs::write(&config, r#"{"primes": [5], "unknown_field": 1}"#).unwrap();
    let config = config.to_str().unwrap();
    for args in [
        vec![],
        vec!["verify"],
        vec!["verify", "everything"],
        vec!["verify", "steps", "--primes", "4"],
        vec!["verify", "steps", "--nu", "3..x"],
        vec!["verify", "steps", "--no-such-flag"],
        vec!["verify", "steps", "--config", config],
        vec!["verify", "steps", "--config", "/nonexistent/slopecert.json"],
        vec!["recheck", "/nonexistent/report.json"],
    ] {
        let out = slopecert(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
    assert_eq!(code(&slopecert(&["--help"])), 0);
}

#[test]
fn flags_override_environment_which_overrides_the_file() {
    let config = scratch("config.json");
    std::fs::write(&config, r#"{"primes": [7], "max_u": 20}"#).unwrap();
    let config = config.to_str().unwrap();

    let out = slopecert_env(&["verify", "identities", "--config", config], &[("SLOPECERT_PRIMES", "5")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let cfg = &json(&out)["config"];
    assert_eq!(cfg["primes"], serde_json::json!([5]));
    assert_eq!(cfg["max_u"], 20);

    let out = slopecert_env(&["verify", "identities", "--config", config, "--primes", "3"], &[("SLOPECERT_PRIMES", "5")]);
    assert_eq!(json(&out)["config"]["primes"], serde_json::json!([3]));
}

#[test]
fn certificates_round_trip_and_tampering_is_rejected() {
    let report_path = scratch("steps.json");
    let report_arg = report_path.to_str().unwrap();
    let out = slopecert(&["verify", "steps", "--primes", "5", "--nu", "2", "--out", report_arg]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(out.stdout.is_empty());

    let report: Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let certs = report["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
    let out = slopecert(&["recheck", report_arg]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    // A constant shifted by p^M is the same residue, but not canonical.
    let mut tampered = report.clone();
    let cert = &mut tampered["certificates"][0];
    let p = cert["params"]["p"].as_u64().unwrap() as u128;
    let m = cert["params"]["precision"].as_u64().unwrap() as u32;
    let slot = &mut cert["constants"][1]["residue"];
    let shifted = slot.as_str().unwrap().parse::<u128>().unwrap() + p.pow(m);
    *slot = Value::String(shifted.to_string());
    let path = scratch("tampered.json");
    std::fs::write(&path, serde_json::to_string(&tampered).unwrap()).unwrap();
    let out = slopecert(&["recheck", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("canonical residue"), "{}", stderr(&out));

    // A changed stored functional is caught by recomputation.
    let mut tampered = report.clone();
    let slot = &mut tampered["certificates"][0]["functionals"][0]["residue"];
    let changed = slot.as_str().unwrap().parse::<u128>().unwrap() ^ 1;
    *slot = Value::String(changed.to_string());
    std::fs::write(&path, serde_json::to_string(&tampered["certificates"]).unwrap()).unwrap();
    let out = slopecert(&["recheck", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("certificate 0"), "{}", stderr(&out));

    // An edited route is caught even though every number is intact.
    let mut tampered = report;
    tampered["certificates"][0]["route"] = Value::String("ambiguous".into());
    std::fs::write(&path, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert_eq!(code(&slopecert(&["recheck", path.to_str().unwrap()])), 1);
}

#[test]
fn recheck_edge_cases() {
    let path = scratch("edge.json");
    std::fs::write(&path, "[]").unwrap();
    assert_eq!(code(&slopecert(&["recheck", path.to_str().unwrap()])), 0);
    std::fs::write(&path, r#"{"certificates": [{"params": 1}]}"#).unwrap();
    assert_eq!(code(&slopecert(&["recheck", path.to_str().unwrap()])), 1);
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(code(&slopecert(&["recheck", path.to_str().unwrap()])), 2);
}

#[test]
fn reports_are_identical_across_runs_and_worker_counts() {
    let args = ["verify", "steps", "--primes", "5,7", "--seed", "3"];
    let one = slopecert(&[&args[..], &["--jobs", "1"]].concat());
    let four = slopecert(&[&args[..], &["--jobs", "4"]].concat());
    let again = slopecert_env(&args, &[("SLOPECERT_JOBS", "4")]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn out_of_range_points_are_excluded_not_failed() {
    // s = 7 is not a residue of any weight at p = 7; the point is reported
    // as excluded with its reason, even with the degenerate flag.
    let out = slopecert(&["verify", "matrices", "--primes", "7", "--nu", "3", "--s", "7", "--allow-degenerate"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["summary"]["excluded"], 1);
    assert!(report["checks"][0]["detail"].as_str().unwrap().contains("exceeds p-1"));
}
