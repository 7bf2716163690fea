//! End-to-end tests of the command-line binary: every command is driven
//! through a real process, reports are parsed back from stdout, and the
//! exit-code contract (0 ok, 1 mathematical failure, 2 bad input) is
//! pinned down with both kinds of failing input.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flatlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatlie"))
        .args(args)
        .output()
        .expect("the binary starts")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_json(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn catalog_list_names_all_sixteen_entries() {
    let out = flatlie(&["catalog-list"]);
    assert_eq!(exit_code(&out), 0);
    let rows = stdout_json(&out);
    let rows = rows.as_array().expect("a JSON array of entries");
    assert_eq!(rows.len(), 16);
    let mut ids: Vec<&str> = rows
        .iter()
        .map(|row| row["id"].as_str().expect("string id"))
        .collect();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), 16, "entry ids are unique");
    assert!(stderr_text(&out).contains("16 catalog entries"));
}

#[test]
fn catalog_verify_is_deterministic_and_covers_every_entry() {
    let first = flatlie(&["catalog-verify", "--samples", "2"]);
    let second = flatlie(&["catalog-verify", "--samples", "2"]);
    assert_eq!(exit_code(&first), 0, "{}", stderr_text(&first));
    assert_eq!(exit_code(&second), 0);
    assert_eq!(
        first.stdout, second.stdout,
        "repeated verification reports differ"
    );
    assert!(stderr_text(&first).contains("16/16"));
    let report = stdout_json(&first);
    assert_eq!(report["total"], 16);
    assert_eq!(report["passed"], 16);
    assert_eq!(report["all_passed"], true);
}

#[test]
fn single_entry_verification_and_unknown_ids() {
    let out = flatlie(&["catalog-verify", "--id", "dim3-heisenberg"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["passed"], true);

    let missing = flatlie(&["catalog-verify", "--id", "dim7-imaginary"]);
    assert_eq!(exit_code(&missing), 2, "unknown ids are an input error");
    let missing_show = flatlie(&["catalog-show", "dim7-imaginary"]);
    assert_eq!(exit_code(&missing_show), 2);
}

#[test]
fn exit_codes_separate_bad_input_from_bad_mathematics() {
    let dir = tempfile::tempdir().unwrap();

    // Unparseable JSON: an input problem.
    let garbled = dir.path().join("garbled.json");
    fs::write(&garbled, "{ this is not json").unwrap();
    let out = flatlie(&["validate", garbled.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_text(&out).starts_with("error:"));

    // Well-formed JSON describing a degenerate metric: a math problem.
    let degenerate = serde_json::json!({
        "dim": 1,
        "basis": ["e1"],
        "brackets": [],
        "metric": [["0"]],
    });
    let path = write_json(dir.path(), "degenerate.json", &degenerate);
    let out = flatlie(&["validate", &path]);
    assert_eq!(exit_code(&out), 1);

    // A perfectly valid Riemannian algebra fed to split: also math.
    let euclidean = serde_json::json!({
        "dim": 2,
        "basis": ["e1", "e2"],
        "brackets": [],
        "metric": [["1", "0"], ["0", "1"]],
    });
    let path = write_json(dir.path(), "euclidean.json", &euclidean);
    let out = flatlie(&["split", &path]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr_text(&out).contains("not Lorentzian"));
}

#[test]
fn out_flag_redirects_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("entry.json");
    let out = flatlie(&[
        "catalog-show",
        "dim3-heisenberg",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty(), "report went to the file instead");
    let report: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(report["id"], "dim3-heisenberg");
    assert!(report["sample_instance"].is_object());
}

#[test]
fn show_split_extend_validate_pipeline() {
    let dir = tempfile::tempdir().unwrap();

    let shown = flatlie(&["catalog-show", "dim5-2solvable-b"]);
    assert_eq!(exit_code(&shown), 0, "{}", stderr_text(&shown));
    let instance = stdout_json(&shown)["sample_instance"].clone();
    let instance_path = write_json(dir.path(), "instance.json", &instance);

    let split = flatlie(&["split", &instance_path]);
    assert_eq!(exit_code(&split), 0, "{}", stderr_text(&split));
    let parts = stdout_json(&split);
    assert_eq!(parts["base"]["dim"], 3);
    let base_path = write_json(dir.path(), "base.json", &parts["base"]);
    let data_path = write_json(dir.path(), "data.json", &parts["data"]);

    let extended = flatlie(&["extend", &base_path, &data_path]);
    assert_eq!(exit_code(&extended), 0, "{}", stderr_text(&extended));
    assert!(stderr_text(&extended).contains("center degenerate"));
    let extended_path = write_json(dir.path(), "extended.json", &stdout_json(&extended));

    let validated = flatlie(&["validate", &extended_path]);
    assert_eq!(exit_code(&validated), 0);
    let report = stdout_json(&validated);
    assert_eq!(report["valid"], true);
    assert_eq!(report["flat"], true);
    assert_eq!(report["signature"], serde_json::json!([1, 0, 4]));

    let analyzed = flatlie(&["analyze", &extended_path]);
    assert_eq!(exit_code(&analyzed), 0);
    let report = stdout_json(&analyzed);
    assert_eq!(report["center_degenerate"], true);
    assert_eq!(report["unimodular"], true);
}

#[test]
fn normal_form_build_feeds_the_criterion_check() {
    let dir = tempfile::tempdir().unwrap();
    let data = serde_json::json!({
        "p": 2,
        "u_vectors": [["1", "1/2"]],
    });
    let data_path = write_json(dir.path(), "milnor.json", &data);

    let built = flatlie(&["milnor-build", &data_path]);
    assert_eq!(exit_code(&built), 0, "{}", stderr_text(&built));
    let algebra = stdout_json(&built);
    assert_eq!(algebra["dim"], 4);
    let algebra_path = write_json(dir.path(), "built.json", &algebra);

    let checked = flatlie(&["milnor-check", &algebra_path]);
    assert_eq!(exit_code(&checked), 0, "{}", stderr_text(&checked));
    let report = stdout_json(&checked);
    assert_eq!(report["verdict"]["flat"], true);
    assert_eq!(report["verdict"]["matches"], true);
    assert_eq!(report["left_multiplication_collapse"], true);

    // The criterion is Riemannian-only: Lorentzian input is rejected as a
    // mathematical failure, not a parse error.
    let shown = flatlie(&["catalog-show", "dim3-heisenberg"]);
    let instance = stdout_json(&shown)["sample_instance"].clone();
    let instance_path = write_json(dir.path(), "lorentzian.json", &instance);
    let rejected = flatlie(&["milnor-check", &instance_path]);
    assert_eq!(exit_code(&rejected), 1);
}
