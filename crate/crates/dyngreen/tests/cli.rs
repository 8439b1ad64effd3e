//! End-to-end checks of the `dyngreen` binary: exit codes, byte-identical
//! reports across reruns, JSON validity, and stdout/stderr routing.

use std::io::Write;
use std::process::{Command, Output};

fn write_map(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new()
        .prefix("map")
        .suffix(".json")
        .tempfile()
        .unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

fn tsq_file() -> tempfile::NamedTempFile {
    write_map(r#"{"d": 2, "F1": [1, 0, 0], "F2": [0, 0, 1], "label": "tsq"}"#)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyngreen"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    let h = run(&["--help"]);
    assert_eq!(h.status.code(), Some(0));
    assert!(stdout(&h).contains("resultant"));
    let v = run(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn resultant_runs_are_byte_identical() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    let a = run(&["resultant", "-m", path]);
    let b = run(&["resultant", "-m", path]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same invocation produced different bytes");
    let text = stdout(&a);
    assert!(text.starts_with("# dyngreen "), "missing meta preamble: {text}");
    assert!(text.ends_with("resultant\n1\n"), "unexpected report: {text}");
    assert!(a.stderr.is_empty());
}

#[test]
fn height_json_is_valid_and_stable() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    let args = ["height", "--point", "[2:1]", "-m", path, "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).expect("invalid JSON");
    assert_eq!(v["meta"]["map"], "tsq");
    let h = v["value"].as_f64().unwrap();
    assert!((h - 2.0f64.ln()).abs() < 1e-9, "global height {h} is not log 2");
}

#[test]
fn tfd_seeded_reruns_are_byte_identical() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    let args = ["tfd", "-m", path, "--place", "p:5", "--n-list", "2,4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "stderr: {}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_json_lists_the_four_small_points() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    // bound = log 10 + 1e-9 so the window floor is exactly 10.
    let out = run(&[
        "census", "-m", path, "--bound", "2.302585094", "--theta", "0.3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 4);
}

#[test]
fn lattes_json_round_trips_as_map_spec() {
    let out = run(&["lattes", "--a", "-1", "--b", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["d"], 4);
    assert_eq!(v["F1"].as_array().unwrap().len(), 5);
    // Feed the emitted spec straight back in as a map file.
    let map = write_map(&stdout(&out));
    let path = map.path().to_str().unwrap();
    let res = run(&["resultant", "-m", path]);
    assert_eq!(res.status.code(), Some(0));
    assert!(stdout(&res).ends_with("resultant\n4096\n"));
}

#[test]
fn green_sum_reports_ok() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    let out = run(&["green-sum", "-m", path, "--z", "[2:1]", "--w", "[3:1]"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.trim_end().ends_with("\ttrue"), "unexpected report: {text}");
}

#[test]
fn validation_errors_exit_one() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    // Duplicate configuration points.
    let dup = run(&["dsum", "-m", path, "--points", "[1:1],[1:1],[2:1]"]);
    assert_eq!(dup.status.code(), Some(1));
    assert!(stderr(&dup).contains("validation"), "stderr: {}", stderr(&dup));
    assert!(dup.stdout.is_empty());
    // Singular cubic.
    let sing = run(&["lattes", "--a", "0", "--b", "0"]);
    assert_eq!(sing.status.code(), Some(1));
    // Composite "prime".
    let place = run(&["height", "-m", path, "--point", "2", "--place", "p:4"]);
    assert_eq!(place.status.code(), Some(1));
    // Configuration size differing from N = t·d^k.
    let count = run(&[
        "bound-report", "-m", path, "--t", "2", "--k", "1", "--points", "[0:1],[1:1],[2:1]",
    ]);
    assert_eq!(count.status.code(), Some(1));
}

#[test]
fn census_resource_guard_exits_three() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    let out = run(&["census", "-m", path, "--bound", "9", "--theta", "0.1"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("resource"), "stderr: {}", stderr(&out));
}

#[test]
fn precision_warning_goes_to_stderr_only() {
    let map = tsq_file();
    let path = map.path().to_str().unwrap();
    let plain = run(&["resultant", "-m", map.path().to_str().unwrap()]);
    let warned = run(&["resultant", "-m", path, "--precision", "64"]);
    assert_eq!(warned.status.code(), Some(0));
    assert!(stderr(&warned).contains("precision"));
    assert_eq!(plain.stdout, warned.stdout, "warning leaked into stdout");
}
