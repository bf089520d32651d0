//! End-to-end checks of the command-line surface: exit codes, report
//! shape, determinism, and the documented sweep tables.

use quivercount_cli::{run, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED};
use serde_json::Value;

fn run_args(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["quivercount"];
    argv.extend(args);
    run(argv)
}

fn run_json(args: &[&str]) -> Value {
    let (code, out) = run_args(args);
    assert_eq!(code, EXIT_OK, "unexpected failure: {out}");
    serde_json::from_str(&out).expect("valid JSON report")
}

#[test]
fn count_example_a2() {
    let report = run_json(&[
        "count", "--quiver", "a2", "--v", "1,1", "--w", "1,1", "--lambda", "1/2,1/2",
    ]);
    assert_eq!(report["result"]["count"], 1);
    assert_eq!(report["status"], "proven-finite-type");
    assert_eq!(report["inputs"]["lambda"][0], "1/2");
}

#[test]
fn flat_example_with_witness() {
    let report = run_json(&["flat", "--quiver", "vertex", "--v", "2", "--w", "1"]);
    assert_eq!(report["result"]["flat"], false);
    assert!(report["result"]["witness"].is_object());
}

#[test]
fn help_exits_zero() {
    let (code, out) = run_args(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Usage"));
}

#[test]
fn parse_failures_exit_two() {
    let (code, _) = run_args(&["count", "--quiver", "a2", "--v", "x", "--w", "1,1", "--lambda", "0,0"]);
    assert_eq!(code, EXIT_PARSE);
    let (code, out) = run_args(&[
        "count", "--quiver", "a2", "--v", "1,1", "--w", "1,1", "--lambda", "1/0,0",
    ]);
    assert_eq!(code, EXIT_PARSE);
    assert!(out.contains("error"));
    let (code, _) = run_args(&["mult", "--quiver", "no-such-quiver", "--v", "1", "--w", "1"]);
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn unsupported_exits_four() {
    // mult on an indefinite quiver (two loops) is unsupported
    let dir = std::env::temp_dir().join("quivercount-test-quivers");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two_loops.quiver");
    std::fs::write(&path, "vertices: 1\narrows: [[0,0],[0,0]]\n").unwrap();
    let (code, _) = run_args(&["mult", "--quiver", path.to_str().unwrap(), "--v", "1", "--w", "1"]);
    assert_eq!(code, EXIT_UNSUPPORTED);
}

#[test]
fn mult_matches_library() {
    let report = run_json(&["mult", "--quiver", "a2", "--w", "1,1", "--v", "1,1"]);
    assert_eq!(report["result"]["mult"], 2);
}

#[test]
fn walls_with_quantum_and_chambers() {
    let report = run_json(&[
        "walls", "--quiver", "cyclic:2", "--v", "1,1", "--w", "1,0", "--lambda", "1/4,3/4",
        "--chambers",
    ]);
    assert_eq!(report["result"]["classical"].as_array().unwrap().len(), 3);
    // δ pairs to 1: the only quantum wall ≤ δ
    assert_eq!(report["result"]["quantum"].as_array().unwrap().len(), 1);
    // 3 distinct lines through the origin in rank 2: 6 chambers
    assert_eq!(report["result"]["chambers"].as_array().unwrap().len(), 6);
}

#[test]
fn slice_hilbert_scheme() {
    let report = run_json(&[
        "slice", "--quiver", "cyclic:2", "--v", "2,2", "--w", "1,0", "--v0", "0,0",
        "--summand", "1,1x2",
    ]);
    assert_eq!(report["result"]["hat_v"], serde_json::json!([2]));
    assert_eq!(report["result"]["hat_w"], serde_json::json!([1]));
}

#[test]
fn fock_filtration_benchmark() {
    let report = run_json(&["fock-filtration", "--m", "2", "--r", "1", "--degree", "2"]);
    assert_eq!(report["result"]["dims"], serde_json::json!([2, 1, 0]));
}

#[test]
fn singular_jordan_status() {
    let report = run_json(&["singular", "--quiver", "jordan", "--v", "2", "--w", "1"]);
    assert_eq!(report["status"], "conjectural");
    let offsets: Vec<&str> = report["result"]["hyperplanes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["offset"].as_str().unwrap())
        .collect();
    assert_eq!(offsets, vec!["-1/2"]);
}

#[test]
fn sweep_sl2_table() {
    // single vertex, w=2: count 1 at extremal v ∈ {0,2} for every λ,
    // count 1 at v=1 iff λ integral.
    let report = run_json(&[
        "sweep", "--quiver", "vertex", "--w", "2", "--v-set", "0;1;2",
        "--lambda-set", "-3;-2;-1;0;1;2;3;1/2",
    ]);
    let rows = report["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 24);
    for row in rows {
        let v = row["v"][0].as_i64().unwrap();
        let lam = row["lambda"][0].as_str().unwrap();
        let integral = !lam.contains('/');
        let expected = match v {
            0 | 2 => 1,
            1 => u64::from(integral),
            _ => unreachable!(),
        };
        assert_eq!(row["count"].as_u64().unwrap(), expected, "v={v} λ={lam}");
    }
}

#[test]
fn sweep_jordan_reproduces_denominator_rule() {
    let report = run_json(&[
        "sweep", "--quiver", "jordan", "--w", "1", "--v-set", "1;2;3;4",
        "--lambda-set", "1/2;1/3;2/3;1/4;3/4;1/5;-2/5;2",
    ]);
    for row in report["result"]["rows"].as_array().unwrap() {
        let n = row["v"][0].as_i64().unwrap();
        let lam = row["lambda"][0].as_str().unwrap();
        let denom: i64 = lam.split('/').nth(1).map_or(1, |d| d.parse().unwrap());
        let expected = u64::from(denom != 1 && denom == n);
        assert_eq!(row["count"].as_u64().unwrap(), expected, "n={n} κ={lam}");
        assert_eq!(row["status"], "known-answer");
    }
}

#[test]
fn empty_sweep_is_ok() {
    let report = run_json(&[
        "sweep", "--quiver", "vertex", "--w", "1", "--v-set", "", "--lambda-set", "0",
    ]);
    assert_eq!(report["result"]["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn reports_round_trip_deterministically() {
    let args = [
        "count", "--quiver", "a2", "--v", "1,1", "--w", "1,1", "--lambda", "1/2,1/2",
    ];
    let first = run_json(&args);
    // re-run with the echoed inputs
    let lambda: Vec<String> = first["inputs"]["lambda"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    let v: Vec<String> = first["inputs"]["v"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let second = run_json(&[
        "count",
        "--quiver",
        first["inputs"]["quiver"].as_str().unwrap(),
        "--v",
        &v.join(","),
        "--w",
        "1,1",
        "--lambda",
        &lambda.join(","),
    ]);
    assert_eq!(first["result"], second["result"]);
}

#[test]
fn no_floating_point_in_reports() {
    for args in [
        vec!["count", "--quiver", "a2", "--v", "1,1", "--w", "1,1", "--lambda", "1/3,1/7"],
        vec!["singular", "--quiver", "jordan", "--v", "4", "--w", "2"],
        vec!["slice", "--quiver", "a2", "--v", "1,1", "--w", "1,1", "--v0", "1,0", "--summand", "0,1"],
    ] {
        let report = run_json(&args);
        fn no_floats(v: &Value) {
            match v {
                Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float leaked: {n}"),
                Value::Array(xs) => xs.iter().for_each(no_floats),
                Value::Object(m) => m.values().for_each(no_floats),
                _ => {}
            }
        }
        no_floats(&report);
    }
}

#[test]
fn spawned_binary_matches_in_process() {
    let exe = env!("CARGO_BIN_EXE_quivercount");
    let out = std::process::Command::new(exe)
        .args(["count", "--quiver", "a2", "--v", "1,1", "--w", "1,1", "--lambda", "1/2,1/2"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let spawned: Value = serde_json::from_slice(&out.stdout).unwrap();
    let (_, inproc) = run_args(&[
        "count", "--quiver", "a2", "--v", "1,1", "--w", "1,1", "--lambda", "1/2,1/2",
    ]);
    let inproc: Value = serde_json::from_str(&inproc).unwrap();
    assert_eq!(spawned, inproc);
}
