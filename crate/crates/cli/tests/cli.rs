use std::process::{Command, Output};

use kronface::KroneckerOracle;
use kronface_cli::{check_grid_size, parse_partition, run_pipeline, RunParams, RunReport};

fn kronface(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kronface")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn two_by_two() -> RunReport {
    let oracle = KroneckerOracle::new();
    RunReport::from_output(&run_pipeline(RunParams::with_defaults(2, 2), &oracle).unwrap())
}

#[test]
fn report_survives_json() {
    let report = two_by_two();
    let back: RunReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(back, report);
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (two_by_two(), two_by_two());
    assert_eq!(a.to_markdown(), b.to_markdown());
    assert_eq!(a.headline(), "6 regular (4 new), 1 non-regular");
}

#[test]
fn partition_arguments() {
    assert_eq!(parse_partition("4,3,2").unwrap().parts(), &[4, 3, 2]);
    assert!(parse_partition("").unwrap().parts().is_empty());
    assert!(parse_partition("2,3").is_err());
    assert!(parse_partition("2,x").is_err());
    assert!(check_grid_size(0, 3, 16).is_err());
    assert!(check_grid_size(5, 4, 16).is_err());
    assert!(check_grid_size(4, 4, 16).is_ok());
}

#[test]
fn enumerate_command() {
    let o = kronface(&["enumerate", "2", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("2 order matrices of size 2×2"));

    let o = kronface(&["enumerate", "3", "3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 36);
}

#[test]
fn kron_command() {
    let o = kronface(&["kron", "1", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = kronface(&["kron", "2,2", "2,2", "2,2", "--scale", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
    // Unequal weights are not an error: the coefficient vanishes.
    let o = kronface(&["kron", "2", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(kronface(&["enumerate", "5", "5"]).status.code(), Some(1));
    assert_eq!(kronface(&["--cap", "4", "faces", "3", "2"]).status.code(), Some(1));
    assert_eq!(kronface(&["kron", "1,2", "3", "3"]).status.code(), Some(1));
    assert_eq!(kronface(&["--threads", "many", "kron", "1", "1", "1"]).status.code(), Some(1));
    assert_eq!(kronface(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn faces_command_writes_both_reports() {
    let dir = std::env::temp_dir().join(format!("kronface-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (md, json) = (dir.join("faces.md"), dir.join("faces.json"));
    let o = kronface(&[
        "--threads",
        "1",
        "faces",
        "2",
        "2",
        "--out",
        md.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&md).unwrap();
    assert!(text.contains("Faces: 6 regular (4 new), 1 non-regular."));
    let report: RunReport = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.to_markdown(), text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_command_on_the_small_grid() {
    let o = kronface(&["check", "2", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("[PASS]")));
}
