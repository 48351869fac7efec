use std::process::{Command, Output};

use quadmod::quad::build_example_mn;
use serde_json::Value;

fn quadmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadmod"))
        .args(args)
        .env_remove("QUADMOD_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn ktheory_of_h_2_4() {
    let o = quadmod(&["ktheory", "--builtin", "mn:2,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).lines().any(|l| l == "K0 = Z/15, K1 = 0"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn full_json_run_passes() {
    let o = quadmod(&[
        "full",
        "--builtin",
        "mn:2,2",
        "--depth",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "quadmod-report-v1");
    assert_eq!(v["depth"], 4);
    assert_eq!(v["summary"]["pass"], true);
    let names: Vec<&str> = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["validate", "fock", "relations", "ck", "ktheory"]);
    for s in v["sections"].as_array().unwrap() {
        for c in s["checks"].as_array().unwrap() {
            assert!(!c["citation"].as_str().unwrap().is_empty(), "{c}");
        }
    }
}

#[test]
fn noncommuting_permutations_exit_one_with_witness() {
    let o = quadmod(&["validate", "--builtin", "perm:3,(12),(23)"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out
        .lines()
        .find(|l| l.starts_with("FAIL left_action_agreement"))
        .unwrap_or_else(|| panic!("no agreement failure in\n{out}"));
    assert!(line.contains("a=e"), "{line}");
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["validate", "--builtin", "mn:1,3"][..],
        &["validate", "--builtin", "mn:2"],
        &["validate", "--builtin", "perm:3,(14),()"],
        &["validate", "--input", "/nonexistent/spec.json"],
        &["fock", "--builtin", "mn:2,2", "--depth", "1"],
        &["validate"],
        &["validate", "--builtin", "mn:2,2", "--input", "x.json"],
        &["bogus"],
    ] {
        let o = quadmod(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_file_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "{\n  \"schema\": \"quadmod-spec-v1\",\n  \"algebras\": [\n",
    )
    .unwrap();
    let o = quadmod(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line "), "{}", stderr(&o));
}

#[test]
fn dimension_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_quadmod"))
        .args(["fock", "--builtin", "mn:2,2", "--depth", "4"])
        .env("QUADMOD_MAX_DIM", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds cap 100"), "{}", stderr(&o));
}

#[test]
fn file_input_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h23.json");
    std::fs::write(&path, build_example_mn(2, 3).unwrap().to_json()).unwrap();
    let from_file = quadmod(&[
        "fock",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let builtin = quadmod(&["fock", "--builtin", "mn:2,3", "--format", "json"]);
    assert_eq!(from_file.status.code(), Some(0));
    let mut a: Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let mut b: Value = serde_json::from_slice(&builtin.stdout).unwrap();
    a["source"] = Value::Null;
    b["source"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn output_file_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|i| dir.path().join(format!("r{i}.txt")))
        .collect();
    for p in &paths {
        let o = quadmod(&[
            "full",
            "--builtin",
            "perm:3,(123),(132)",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (a, b) = (
        std::fs::read(&paths[0]).unwrap(),
        std::fs::read(&paths[1]).unwrap(),
    );
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("convention finding: U*xU = β(x)"), "{text}");
    assert!(text.contains("== summary =="));
}

#[test]
fn seeded_smith_self_check() {
    let o = quadmod(&["ktheory", "--builtin", "mn:2,2", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS smith_self_check"));
}

#[test]
fn larger_modules_default_to_depth_two() {
    let o = quadmod(&["ktheory", "--builtin", "mn:2,8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("depth=2"));
    assert!(out.contains("K0 = Z/63, K1 = 0"));
}
