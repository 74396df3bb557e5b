use std::path::PathBuf;
use std::process::{Command, Output};

fn repo(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(path)
}

fn empathic(args: &[&str], cwd: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_empathic"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &str) -> String {
    repo(path).to_string_lossy().into_owned()
}

#[test]
fn solve_prints_one_extension_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = empathic(
        &["solve", "--af", &p("frameworks/af1.json"), "--semantics", "preferred"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{a1,c1}\n{b1}\n");

    let out = empathic(
        &["solve", "--af", &p("frameworks/af2.json"), "--semantics", "complete"],
        dir.path(),
    );
    assert_eq!(stdout(&out), "{}\n{a2,c2,e2}\n");

    let out = empathic(
        &["solve", "--af", &p("frameworks/empty.json"), "--semantics", "grounded"],
        dir.path(),
    );
    assert_eq!(stdout(&out), "{}\n");
}

#[test]
fn solve_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = empathic(
        &["solve", "--af", &p("frameworks/af1.json"), "--semantics", "stable"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown semantics"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"arguments": ["a"], "attacks": [["a", "zz"]]}"#).unwrap();
    let out = empathic(
        &["solve", "--af", bad.to_str().unwrap(), "--semantics", "grounded"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zz"));

    std::fs::write(&bad, "{not json").unwrap();
    let out = empathic(
        &["solve", "--af", bad.to_str().unwrap(), "--semantics", "grounded"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn run_writes_trace_and_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let out = empathic(&["run", "--scenario", &p("scenarios/basic.json")], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("outcome: agreed"), "{text}");
    assert!(text.contains("action: Show university ad"), "{text}");

    let trace = std::fs::read_to_string(dir.path().join("basic.trace.jsonl")).unwrap();
    assert!(trace.starts_with(r#"{"record":"header""#));
}

#[test]
fn identical_runs_write_identical_traces() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.jsonl", "b.jsonl"] {
        let out = empathic(
            &["run", "--scenario", &p("scenarios/argumentation.json"), "--out", name],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(dir.path().join("a.jsonl")).unwrap();
    let b = std::fs::read(dir.path().join("b.jsonl")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn semantics_flag_changes_the_example_two_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = p("scenarios/example2.json");
    let ideal = empathic(
        &["run", "--scenario", &scenario, "--semantics", "maximal_ideal"],
        dir.path(),
    );
    assert_eq!(ideal.status.code(), Some(0));
    assert!(stdout(&ideal).contains("resolution: {a2,c2,e2} retracted []"));
    assert!(stdout(&ideal).contains("action: Show steak ad"));

    let grounded = empathic(&["run", "--scenario", &scenario, "--semantics", "grounded"], dir.path());
    assert_eq!(grounded.status.code(), Some(0));
    assert!(stdout(&grounded).contains("resolution: {} retracted [a2]"));
    assert!(stdout(&grounded).contains("action: Show fruit ad"));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    for (name, code) in [
        ("basic.json", 0),
        ("argumentation.json", 0),
        ("example1.json", 0),
        ("example2.json", 0),
    ] {
        let out = empathic(&["run", "--scenario", &p(&format!("scenarios/{name}"))], dir.path());
        assert_eq!(out.status.code(), Some(code), "{name}");
    }

    let out = empathic(
        &[
            "run",
            "--scenario",
            &p("scenarios/argumentation.json"),
            "--max-rounds",
            "0",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("outcome: cancelled"));

    let out = empathic(&["run"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--scenario"));

    let out = empathic(&["run", "--scenario", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let out = empathic(
        &["run", "--scenario", &p("scenarios/basic.json"), "--variant", "eager"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));

    let out = empathic(&["--help"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_scenarios_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(repo("scenarios/basic.json")).unwrap()).unwrap();
    doc["agents"][0]["rules"][0]["action"] = "Show beer ad".into();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = empathic(&["run", "--scenario", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid scenario"), "{err}");
    assert!(!dir.path().join("broken.trace.jsonl").exists());
}
