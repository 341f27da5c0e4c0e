//! End-to-end tests of the dancekit binary: exit codes, output shapes,
//! determinism, and the documented environment override.

use std::path::Path;
use std::process::{Command, Output};

fn dancekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dancekit"))
        .args(args)
        .env_remove("DANCEKIT_CENSUS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn check_feasible_and_infeasible_exit_codes() {
    let ok = dancekit(&["check", "--gauss", "O1U2O3U1O2U3", "--cuts", "F:0,3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("feasible"));
    assert!(stdout(&ok).contains("witness: U1 O1 U2 O2 U3 O3"));

    let bad = dancekit(&["check", "--gauss", "O1U2O3U1O2U3", "--cuts", "F:0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("blame cycle"));

    let kink = dancekit(&["check", "--gauss", "O1U1", "--cuts", "F:1"]);
    assert_eq!(kink.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let role = dancekit(&["check", "--gauss", "O1", "--cuts", "F:0"]);
    assert_eq!(role.status.code(), Some(2));

    let gap = dancekit(&["check", "--gauss", "O1U1", "--cuts", "F:7"]);
    assert_eq!(gap.status.code(), Some(2));

    let cuts = dancekit(&["check", "--gauss", "O1U1", "--cuts", "X:0"]);
    assert_eq!(cuts.status.code(), Some(2));
}

#[test]
fn min_agrees_with_oracle_and_reports_witness() {
    let fast = dancekit(&["min", "--gauss", "O1U2O3U1O2U3", "--format", "json"]);
    assert_eq!(fast.status.code(), Some(0));
    let fast_json: serde_json::Value = serde_json::from_str(&stdout(&fast)).unwrap();
    assert_eq!(fast_json["schema_version"], 1);
    assert_eq!(fast_json["min_dancers"], 2);

    let naive = dancekit(&["min", "--gauss", "O1U2O3U1O2U3", "--oracle", "--format", "json"]);
    let naive_json: serde_json::Value = serde_json::from_str(&stdout(&naive)).unwrap();
    assert_eq!(fast_json["min_dancers"], naive_json["min_dancers"]);
    assert_eq!(fast_json["witness"], naive_json["witness"]);

    let empty = dancekit(&["min", "--gauss", "", "--format", "json"]);
    let empty_json: serde_json::Value = serde_json::from_str(&stdout(&empty)).unwrap();
    assert_eq!(empty_json["min_dancers"], 1);
}

#[test]
fn schedule_formats_and_failures() {
    let text = dancekit(&["schedule", "--braid", "n=2; 1 1 1", "--theorem3"]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).starts_with("dancers: 2"));

    let svg = dancekit(&[
        "schedule", "--braid", "n=2; 1 1 1", "--theorem3", "--format", "svg",
    ]);
    assert!(stdout(&svg).starts_with("<svg"));

    let json = dancekit(&[
        "schedule", "--braid", "n=2; 1 1 1", "--theorem3", "--format", "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(parsed["schema_version"], 1);
    assert_eq!(parsed["dancers"].as_array().unwrap().len(), 2);

    // Infeasible cuts are a domain failure.
    let infeasible = dancekit(&["schedule", "--gauss", "O1U2O3U1O2U3", "--cuts", "F:0"]);
    assert_eq!(infeasible.status.code(), Some(1));

    // SVG without a braid input is a usage error.
    let unsupported = dancekit(&[
        "schedule", "--gauss", "O1U2O3U1O2U3", "--cuts", "F:0,3", "--format", "svg",
    ]);
    assert_eq!(unsupported.status.code(), Some(2));

    // A link closure is a domain failure.
    let link = dancekit(&["schedule", "--braid", "n=2; 1 1", "--theorem3"]);
    assert_eq!(link.status.code(), Some(1));
}

#[test]
fn convert_round_trips() {
    let gauss = dancekit(&["convert", "--braid", "n=2; 1 1 1", "--to", "gauss"]);
    assert_eq!(gauss.status.code(), Some(0));
    let word = stdout(&gauss);
    assert_eq!(word.trim().len(), 6 * 2);

    let pd = dancekit(&["convert", "--pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "--to", "gauss"]);
    assert_eq!(pd.status.code(), Some(0));

    let link = dancekit(&["convert", "--braid", "n=2; 1 1", "--to", "gauss"]);
    assert_eq!(link.status.code(), Some(1));
}

#[test]
fn census_runs_and_is_deterministic() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let run1 = dancekit(&["census", "--out", dir1.path().to_str().unwrap()]);
    assert_eq!(run1.status.code(), Some(0), "{}", stdout(&run1));
    let run2 = dancekit(&["census", "--out", dir2.path().to_str().unwrap(), "--jobs", "1"]);
    assert_eq!(run2.status.code(), Some(0));

    for file in ["dance_report.json", "dance_report.csv"] {
        let a = std::fs::read(dir1.path().join(file)).unwrap();
        let b = std::fs::read(dir2.path().join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between runs");
    }
    assert!(stdout(&run1).contains("checks:"));
    assert!(stdout(&run1).contains("0 failed"));
}

#[test]
fn census_file_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("tiny.csv");
    std::fs::write(
        &table,
        "name,pd,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial\n\
         3_1,\"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\",n=2; 1 1 1,3,2,2,true,true\n",
    )
    .unwrap();

    let by_flag = dancekit(&[
        "census",
        "--file",
        table.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(by_flag.status.code(), Some(0));
    assert!(stdout(&by_flag).contains("1 record(s)"));

    let by_env = Command::new(env!("CARGO_BIN_EXE_dancekit"))
        .args(["census", "--out", dir.path().to_str().unwrap()])
        .env("DANCEKIT_CENSUS", &table)
        .output()
        .unwrap();
    assert_eq!(by_env.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&by_env.stdout).contains("1 record(s)"));

    let missing = dancekit(&["census", "--file", "/nonexistent/census.csv"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn census_strict_mode() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("malformed.csv");
    std::fs::write(
        &table,
        "name,pd,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial\n\
         bad,,,3,2,2,true,true\n\
         3_1,\"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\",,3,2,2,true,true\n",
    )
    .unwrap();

    let lenient = dancekit(&[
        "census",
        "--file",
        table.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&lenient.stderr).contains("skipped"));

    let strict = dancekit(&[
        "census",
        "--file",
        table.to_str().unwrap(),
        "--strict",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn reports_land_only_in_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested").join("reports");
    let run = dancekit(&["census", "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    assert!(out.join("dance_report.json").exists());
    assert!(out.join("dance_report.csv").exists());
    let entries: Vec<_> = std::fs::read_dir(dir.path().join("nested")).unwrap().collect();
    assert_eq!(entries.len(), 1);
}
