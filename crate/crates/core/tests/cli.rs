//! The binary: outputs, exit codes and JSON reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/corpus")
        .join(name)
        .display()
        .to_string()
}

fn nsdial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsdial")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn translate_u_of_st() {
    let o = nsdial(&["translate", "--u", &fixture("st.f")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "(exists-st ((y N)) (forall-st () (eq N (var y) (var x))))"));
}

#[test]
fn flavor_flag_is_required() {
    assert_eq!(nsdial(&["translate", &fixture("st.f")]).status.code(), Some(2));
}

#[test]
fn check_term_normalizes() {
    let o = nsdial(&["check-term", &fixture("len-nil.term")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("zero : N"));
}

#[test]
fn corrupted_bundle_exits_one_with_counterexample() {
    let o = nsdial(&[
        "verify",
        &fixture("os-star-empty-u.bad.bundle"),
        "--nat-bound",
        "3",
        "--len-bound",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("counterexample: y = (seq N zero);"), "{out}");
    assert!(out.contains("replay: false"));
}

#[test]
fn parse_and_type_errors_exit_two_with_location() {
    let o = nsdial(&["check-term", &fixture("ill-typed.bad.term")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("ill-typed.bad.term:1:11:"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("open.term");
    std::fs::write(&bad, "(len (nil N)").unwrap();
    let o = nsdial(&["check-term", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("open.term:1:1:"));
}

#[test]
fn failing_proof_exits_one_naming_the_node() {
    let o = nsdial(&["check-proof", &fixture("mp-mismatch.bad.proof")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("root (mp)"));
}

#[test]
fn extract_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = nsdial(&["extract", "--u", &fixture("doubling-u.proof")]);
    assert_eq!(o.status.code(), Some(0));
    let bundle: String = stdout(&o)
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with("  X :"))
        .collect::<Vec<_>>()
        .join("\n");
    let path = dir.path().join("doubling.bundle");
    std::fs::write(&path, bundle).unwrap();
    let o = nsdial(&["verify", path.to_str().unwrap(), "--nat-bound", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // Extracting a u proof as dst is a flavor error.
    assert_eq!(
        nsdial(&["extract", "--dst", &fixture("doubling-u.proof")])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn corpus_json_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = PathBuf::from(fixture("st.f")).parent().unwrap().display().to_string();
    let mut reports = Vec::new();
    let path = dir.path().join("report.json");
    for _ in 0..2 {
        let o = nsdial(&["--json", path.to_str().unwrap(), "corpus", "run", &corpus]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["status"], "ok");
        assert!(v["wall_time_ms"].is_number());
        v.as_object_mut().unwrap().remove("wall_time_ms");
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
    let items = reports[0]["items"].as_array().unwrap();
    assert!(items.iter().all(|i| i["as_expected"] == true));
    let inputs = reports[0]["inputs"].as_array().unwrap();
    assert!(inputs.iter().all(|i| i["sha256"].as_str().unwrap().len() == 64));
}
