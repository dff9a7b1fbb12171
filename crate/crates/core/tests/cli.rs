use std::process::{Command, Output};

use kbonacci::SquareMatrix;

fn kbonacci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kbonacci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn term_via_power_path() {
    let o = kbonacci(&["term", "--k", "3", "--j", "6", "--method", "qpow"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "7\n");
}

#[test]
fn usage_errors_exit_2_with_one_line() {
    for args in [
        &["term", "--k", "1", "--j", "5"][..],
        &["term", "--k", "2", "--j", "x"][..],
        &["seq", "--k", "2", "--from", "5", "--to", "1"][..],
        &["bench", "--k", "2", "--j-max", "3", "--step", "5"][..],
        &["verify", "--with", "2-3"][..],
        &[][..],
    ] {
        let o = kbonacci(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn matrix_json_parses_back() {
    let o = kbonacci(&[
        "matrix", "--k", "2", "--r", "1", "--j", "1", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m = SquareMatrix::from_json(&stdout(&o)).unwrap();
    assert_eq!(m, SquareMatrix::from_i64([[1, 1], [1, 0]]));
}

#[test]
fn matrix_plain_and_csv() {
    let o = kbonacci(&["matrix", "--family", "L", "--r", "1", "--j", "2"]);
    assert_eq!(stdout(&o), "4 3\n3 1\n");
    let o = kbonacci(&[
        "matrix", "--family", "Q", "--k", "3", "--r", "1", "--format", "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "\"c0\",\"c1\",\"c2\"\n\"1\",\"1\",\"0\"\n\"1\",\"0\",\"1\"\n\"1\",\"0\",\"0\"\n"
    );
}

#[test]
fn negative_sequence_ranges() {
    let o = kbonacci(&[
        "seq", "--k", "5", "--from", "-5", "--to", "-1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let values: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["0", "0", "0", "-1", "1"]);
}

#[test]
fn blocks_carry_annotations() {
    let o = kbonacci(&["blocks", "--k", "5", "--count", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last = &v["blocks"][3];
    assert_eq!(
        last["values"],
        serde_json::json!(["8", "-20", "18", "-7", "1"])
    );
    assert_eq!(last["properties"]["last_nonzero"], "1");
    assert_eq!(last["properties"]["zero_sum"], true);
    let o = kbonacci(&["blocks", "--k", "3", "--count", "2"]);
    assert!(stdout(&o).contains("+alternating"));
}

#[test]
fn verify_exit_codes() {
    let args = [
        "verify", "--suite", "all", "--max-k", "4", "--max-r", "2", "--max-n", "10", "--format",
        "json",
    ];
    let o = kbonacci(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["timestamp"].is_string());
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &[
            "seq", "--k", "4", "--from", "-30", "--to", "30", "--format", "csv",
        ][..],
        &[
            "matrix", "--k", "3", "--r", "2", "--j", "-4", "--format", "json",
        ][..],
        &["blocks", "--k", "6", "--count", "8"][..],
    ] {
        assert_eq!(kbonacci(args).stdout, kbonacci(args).stdout, "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("kbonacci-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("term.json");
    let o = kbonacci(&[
        "term",
        "--k",
        "2",
        "--j",
        "100",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"], "354224848179261915075");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bench_rows() {
    let o = kbonacci(&[
        "bench", "--k", "2", "--j-max", "10000", "--step", "2500", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let js: Vec<String> = rows.records().map(|r| r.unwrap()[0].to_string()).collect();
    assert_eq!(js, ["2500", "5000", "7500", "10000"]);
}
