use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_basel-verify"))
}

#[test]
fn default_run_exits_zero_with_twelve_rows() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS ")).count(), 12);
}

#[test]
fn json_to_file_is_strict_json_and_matches_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin()
        .args(["--all", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["steps"].as_array().unwrap().len(), 12);
}

#[test]
fn failing_json_run_is_still_valid_json() {
    let out = bin().args(["--format", "json", "--max-evals", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], false);
}

#[test]
fn unachievable_tolerance_exits_one() {
    let out = bin().args(["--step", "moments", "--tol", "1e-15"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("FAIL moments "));
}

#[test]
fn selected_steps_only() {
    let out = bin().args(["--step", "g0", "--step", "basel", "--format", "markdown"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.contains("| g0 | PASS |") && md.contains("| basel | PASS |"));
    assert!(!md.contains("| g1 |"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["--step", "nonsense"][..], &["--tol", "x"], &["--frobnicate"], &["--all", "--step", "g0"]] {
        let out = bin().args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = bin().args(["--step", "nonsense"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonsense"));
}

#[test]
fn unwritable_output_exits_three() {
    let out = bin().args(["--step", "g0", "--out", "/nonexistent-dir/r.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("--max-evals"));
}

#[test]
fn verbose_plain_adds_notes() {
    let out = bin().args(["--step", "g0", "--verbose"]).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1/1 steps pass"));
}
