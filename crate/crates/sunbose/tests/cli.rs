use std::process::{Command, Output};

use serde_json::Value;

fn sunbose(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sunbose")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("wallTime");
                m.remove("wallTimeSeconds");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

#[test]
fn algebra_su3_passes() {
    let out = sunbose(&["algebra", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schemaVersion"], 1);
    assert_eq!(r["pass"], true);
    assert!(r["evidence"]["maxCommutatorResidual"].as_f64().unwrap() < 1e-11);
    assert!(r["wallTimeSeconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn algebra_su2_structure_constants_are_epsilon() {
    let r = report(&sunbose(&["algebra", "--n", "2"]));
    assert!(r["evidence"]["epsilonDeviation"].as_f64().unwrap() < 1e-14);
}

#[test]
fn rank_too_small_is_a_usage_error() {
    let out = sunbose(&["algebra", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("group rank too small"));
    assert!(out.stdout.is_empty());
}

#[test]
fn irrep_examples() {
    let r = report(&sunbose(&["irrep", "--n", "3", "--c", "1,1"]));
    assert_eq!(r["pass"], true);
    assert_eq!(r["evidence"]["sectorDim"], 9);
    assert_eq!(r["evidence"]["weylDim"], 8);
    assert_eq!(r["evidence"]["rankDim"], 8);
    assert_eq!(report(&sunbose(&["irrep", "--n", "2", "--c", "3"]))["evidence"]["weylDim"], 4);
    assert_eq!(report(&sunbose(&["irrep", "--n", "3", "--c", "0,0"]))["evidence"]["weylDim"], 1);
}

#[test]
fn coherent_examples() {
    let r = report(&sunbose(&["coherent", "--n", "3", "--c", "1,1", "--seed", "7"]));
    assert_eq!(r["pass"], true);
    assert!(r["evidence"]["covarianceResidual"].as_f64().unwrap() < 1e-9);
    let r = report(&sunbose(&["coherent", "--n", "2", "--c", "1", "--seed", "1"]));
    let overlap = &r["evidence"]["selfOverlap"];
    assert!((overlap[0].as_f64().unwrap() - 1.0).abs() < 1e-14);
    assert_eq!(overlap[1], 0.0);
    let r = report(&sunbose(&["coherent", "--n", "4", "--c", "1,0,1", "--seed", "7"]));
    assert!(r["evidence"]["irrepMembershipResidual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn identity_su2_fundamental() {
    let out = sunbose(&["identity", "--n", "2", "--c", "1", "--samples", "100000", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &report(&out)["evidence"]["report"];
    assert_eq!(rec["irrepDimEstimate"], 2);
    let spread = rec["kClusterSpread"].as_f64().unwrap() / rec["kClusterMean"].as_f64().unwrap();
    assert!(spread < 0.02);
}

#[test]
fn insufficient_samples_is_a_usage_error() {
    let out = sunbose(&["identity", "--n", "2", "--c", "1", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("insufficient samples"));
}

#[test]
fn failed_check_exits_one_and_names_the_tolerance() {
    let out = sunbose(&["algebra", "--n", "3", "--tol", "closure=0"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["pass"], false);
    let failed: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(!failed.is_empty());
    for c in failed {
        assert_eq!(c["tolerance"], "closure");
        assert!(c["measured"].is_number());
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn unknown_tolerance_and_bad_label_are_usage_errors() {
    assert_eq!(sunbose(&["algebra", "--n", "3", "--tol", "nonsense=1"]).status.code(), Some(2));
    assert_eq!(sunbose(&["irrep", "--n", "3", "--c", "1"]).status.code(), Some(2));
    assert_eq!(sunbose(&["irrep", "--n", "3", "--c", "1,x"]).status.code(), Some(2));
    assert_eq!(sunbose(&["irrep"]).status.code(), Some(2));
    assert_eq!(sunbose(&["bogus"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"n": 3, "c": [1, 1], "seed": 3, "samples": 4}"#).unwrap();
    let out_path = dir.path().join("report.json");
    let out = sunbose(&[
        "coherent",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "9",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["config"]["seed"], 9);
    assert_eq!(r["config"]["c"], serde_json::json!([1, 1]));
    assert_eq!(r["evidence"]["frames"], 4);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(written, r);

    std::fs::write(&cfg, r#"{"n": 3, "colour": 1}"#).unwrap();
    assert_eq!(sunbose(&["algebra", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    for args in [
        vec!["algebra", "--n", "4"],
        vec!["irrep", "--n", "3", "--c", "2,1"],
        vec!["coherent", "--n", "3", "--c", "1,1", "--seed", "7"],
        vec!["identity", "--n", "3", "--c", "1,1", "--samples", "5000", "--seed", "42"],
    ] {
        let a = without_timing(report(&sunbose(&args)));
        let b = without_timing(report(&sunbose(&args)));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{args:?}");
    }
    let a = report(&sunbose(&["identity", "--n", "2", "--c", "1", "--samples", "500", "--seed", "1"]));
    let b = report(&sunbose(&["identity", "--n", "2", "--c", "1", "--samples", "500", "--seed", "2"]));
    assert_ne!(a["evidence"]["report"]["eigenvalues"], b["evidence"]["report"]["eigenvalues"]);
}
