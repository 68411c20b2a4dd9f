use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn hinfty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hinfty")).args(args).output().expect("spawn hinfty")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn manifest_lists_every_check() {
    let o = hinfty(&["manifest"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for id in ["hopf-axioms", "normal-form-vs-quotient", "delta-rule-compatible", "free-algebra-universal"] {
        assert!(text.contains(id), "missing {id}");
    }
}

#[test]
fn hopf_suite_passes_on_z2() {
    let o = hinfty(&["check", "hopf", "--algebra", &fixture("z2.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn corrupted_antipode_exits_one() {
    let o = hinfty(&["check", "hopf", "--algebra", &fixture("z2_bad_antipode.json"), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("antipode fails at g"), "{}", stdout(&o));
}

#[test]
fn malformed_input_exits_two_with_location() {
    let bad = tmp("broken.json");
    std::fs::write(&bad, "{\"kind\": \"group_algebra\",\n  \"field\": }\n").unwrap();
    let o = hinfty(&["check", "hopf", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("broken.json:2:"), "{err}");
}

#[test]
fn unknown_selector_and_missing_file_exit_two() {
    let o = hinfty(&["check", "no-such-suite", "--algebra", &fixture("z2.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = hinfty(&["check", "hopf", "--algebra", "/nonexistent/h.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hinfty(&["check"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn infinite_algebra_only_supports_hopf_suite() {
    let o = hinfty(&["check", "hopf", "--algebra", &fixture("d_poly.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = hinfty(&["check", "all", "--algebra", &fixture("d_poly.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_check_selector() {
    let o = hinfty(&["check", "star-summands", "--algebra", &fixture("z2.json"), "--trunc", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "star-summands");
}

#[test]
fn rules_suite_reports_flag_in_text_and_json() {
    let args = ["check", "rules", "--algebra", &fixture("z2.json"), "--module", &fixture("z2_regular.json"), "--seed", "3"];
    let out = tmp("rules.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let o = hinfty(&with_out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let json = std::fs::read_to_string(&out).unwrap();
    let report = hinfty::suite::Report::from_json(&json).unwrap();
    assert_eq!(report.to_json(), json);
    assert_eq!(report.check("delta-rule-compatible").unwrap().status, hinfty::suite::Status::Flagged);

    let mut text = args.to_vec();
    text.extend(["--format", "text"]);
    let o = hinfty(&text);
    assert!(stdout(&o).contains("flagged:"), "{}", stdout(&o));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["check", "rules", "--algebra", &fixture("z2.json"), "--trunc", "2", "--seed", "9"];
    let a = hinfty(&args);
    let b = hinfty(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
