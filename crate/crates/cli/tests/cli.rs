use std::process::{Command, Output};

use serde_json::Value;

fn qkz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = qkz(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["ground-state", "--n", "0"][..],
        &["ground-state", "--n", "9"],
        &["loop", "--n", "0"],
        &["verify", "no-such-suite"],
        &["verify", "exchange", "--N", "4"],
        &["verify", "exchange", "--q", "1"],
        &["verify", "transfer-eigen", "--q", "3/2"],
        &["inhom-component", "--N", "3", "--a", "1", "--z", "1,1,2"],
        &["ground-state", "--n", "2", "--tau", "x"],
    ] {
        assert_eq!(qkz(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn ground_state_tables() {
    let v = json(&["ground-state", "--n", "4", "--tau", "1"]);
    let hit = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["a"] == serde_json::json!([1, 3, 5, 7]))
        .unwrap();
    assert_eq!(hit["value"], "42");

    let v = json(&["ground-state", "--n", "2"]);
    let value = |a: [u64; 2]| {
        v["components"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["a"] == serde_json::json!(a))
            .unwrap()["value"]
            .to_string()
    };
    assert_eq!(value([1, 2]), "[1]");
    assert_eq!(value([1, 5]), "[0,1]");
    assert_eq!(value([2, 3]), "[0,0,1]");
    assert_eq!(value([1, 3]), "[0,2]");
    assert_eq!(value([2, 4]), "[0,1,0,1]");
    assert_eq!(value([1, 4]), "[1,0,1]");
}

#[test]
fn loop_partial_sums_and_totals() {
    let v = json(&["loop", "--n", "4"]);
    assert_eq!(v["partial_sums"], serde_json::json!([17, 4, 4, 17]));
    assert_eq!(v["total"], 42);
    let v = json(&["loop", "--n", "1"]);
    assert_eq!(v["patterns"], serde_json::json!([[2, 1]]));
    assert_eq!(v["values"], serde_json::json!([1]));
    assert_eq!(json(&["loop", "--n", "3"])["total"], 7);
}

#[test]
fn asm_table_csv() {
    let out = qkz(&["asm-table", "--max-n", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "n,A,refined\n1,1,1\n2,2,1 1\n3,7,2 3 2\n4,42,7 14 14 7\n"
    );
}

#[test]
fn inhomogeneous_component_at_small_size() {
    let v = json(&[
        "inhom-component",
        "--N",
        "3",
        "--a",
        "1",
        "--z",
        "1,2,3",
        "--q",
        "2",
    ]);
    assert_eq!(v["value"], "5/2");
    let v = json(&[
        "inhom-component",
        "--N",
        "3",
        "--a",
        "2,3",
        "--bar",
        "--z",
        "1,2,3",
        "--q",
        "2",
    ]);
    assert_eq!(v["value"], "5/2");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "theorem2", "--max-n", "6"][..],
        &[
            "verify", "exchange", "--N", "5", "--q", "3/2", "--trials", "20", "--seed", "7",
        ],
        &[
            "verify",
            "transfer-eigen",
            "--N",
            "7",
            "--trials",
            "10",
            "--seed",
            "42",
        ],
        &["verify", "cyclicity", "--N", "5", "--trials", "4"],
        &["verify", "yang-baxter", "--q", "omega-", "--trials", "10"],
        &["verify", "xxz-eigen", "--max-n", "5"],
        &["verify", "complement", "--N", "5", "--trials", "2"],
        &["verify", "recurrence", "--max-n", "4"],
        &["verify", "theorem1", "--max-n", "5"],
        &["verify", "theorem3", "--max-n", "5"],
        &["verify", "loop-expansion", "--max-n", "4"],
        &["verify", "refined-asm", "--max-n", "5", "--trials", "2"],
        &["verify", "loopinter", "--max-n", "5"],
    ] {
        let v = json(args);
        assert_eq!(v["failed"], 0, "{args:?}");
        assert!(v["passed"].as_u64().unwrap() > 0, "{args:?}");
    }
    let v = json(&[
        "verify", "exchange", "--N", "3", "--seed", "11", "--trials", "2",
    ]);
    assert_eq!(v["parameters"]["seed"], 11);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "complement",
        "--N",
        "5",
        "--trials",
        "4",
        "--seed",
        "3",
        "--format",
        "csv",
    ];
    let first = qkz(&args);
    let second = qkz(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let other = qkz(&[
        "verify",
        "complement",
        "--N",
        "5",
        "--trials",
        "4",
        "--seed",
        "4",
        "--format",
        "csv",
    ]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qkz-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let out = qkz(&[
        "ground-state",
        "--n",
        "1",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}
