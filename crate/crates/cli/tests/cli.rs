use std::process::{Command, Output};

use serde_json::Value;

fn bqt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqt")).args(args).output().expect("the binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON report")
}

fn temp_path(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("bqt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn verify_partitions_passes() {
    let o = bqt(&["verify", "--poset", "partitions", "--max-boxes", "4", "--levels", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&o);
    assert_eq!(r["passed"], true);
    assert_eq!(r["dims"], serde_json::json!([12, 14, 11, 5, 1]));
    assert!(r["relations"]["outcomes"].as_array().unwrap().iter().all(|o| o["status"] == "pass"));
}

#[test]
fn boolean_closed_form_passes_monodromy() {
    let o = bqt(&["edge", "--poset", "boolean", "--n", "3", "--closed-form", "--check-monodromy"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["monodromy"]["squares_checked"], 6);
    assert_eq!(r["edge"].as_array().unwrap().len(), 12);
}

/// A linear poset has no commuting squares, so scaling one cover is a change of
/// basis and every check still passes.
#[test]
fn corrupting_a_linear_poset_is_a_gauge() {
    let o = bqt(&["verify", "--poset", "linear", "--n", "3", "--corrupt-edge", "0"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["monodromy"]["squares_checked"], 0);
    assert_eq!(r["relations"]["outcomes"].as_array().unwrap().iter().filter(|o| o["status"] == "fail").count(), 0);
}

#[test]
fn corrupting_a_square_fails_with_a_witness() {
    let o = bqt(&["verify", "--poset", "partitions", "--max-boxes", "3", "--corrupt-edge", "1"]);
    assert_eq!(code(&o), 1);
    let r = report(&o);
    assert_eq!(r["passed"], false);
    let w = &r["monodromy"]["failure"];
    assert_eq!(w["base"], "(1)");
    assert_eq!(w["x"], "q");
    assert_eq!(w["y"], "t");
    assert!(r["relations"]["outcomes"].as_array().unwrap().iter().any(|o| o["family"] == "t_dplus2" && o["status"] == "fail"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["frobnicate"],
        vec!["verify"],
        vec!["verify", "--poset", "nonsense"],
        vec!["verify", "--poset", "partitions(2"],
        vec!["edge", "--poset", "linear", "--closed-form"],
        vec!["verify", "--poset", "linear", "--n", "3", "--corrupt-edge", "9"],
        vec!["verify", "--poset", "boolean", "--n", "3", "--params", "2"],
        vec!["verify", "--poset", "linear(3,a5)", "--params", "4"],
    ] {
        let o = bqt(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("POSET"), "{args:?} prints the grammar");
    }
}

#[test]
fn library_errors_are_reported_as_failures() {
    let o = bqt(&["rep", "--poset", "boolean(a1,q*a1)"]);
    assert_eq!(code(&o), 1);
    assert!(report(&o)["error"].as_str().unwrap().contains("not excellent"));
}

#[test]
fn output_is_deterministic() {
    let args = ["rep", "--poset", "partitions(3)", "--seed", "5"];
    let a = bqt(&args);
    let b = bqt(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_count_does_not_change_the_output() {
    let args = ["verify", "--poset", "boolean(a1,a2,a3)"];
    let many = bqt(&args);
    let one = Command::new(env!("CARGO_BIN_EXE_bqt")).args(args).env("BQT_THREADS", "1").output().unwrap();
    assert_eq!(many.stdout, one.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_bqt")).args(args).env("BQT_THREADS", "zero").output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn posets_round_trip_through_json_files() {
    let path = temp_path("p3.json");
    let o = bqt(&["poset", "--poset", "partitions(3)@a1", "--out", &path]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let again = report(&bqt(&["poset", "--poset", &path]));
    assert_eq!(again["definition"], written["definition"]);
    assert_eq!(again["excellence"]["witness"], Value::Null);
}

#[test]
fn pretty_format_prints_a_summary() {
    let o = bqt(&["chains", "--poset", "partitions(2)", "--format", "pretty"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("[∅; 1, q]"));
    assert!(text.trim_end().ends_with("result: pass"));
}

/// One invocation per acceptance check, with the exit code it must produce.
#[test]
fn every_acceptance_check_runs_from_one_invocation() {
    let runs: Vec<(Vec<&str>, i32)> = vec![
        (vec!["verify", "--poset", "partitions(6,cols=2)"], 0),
        (vec!["verify", "--poset", "linear(4)"], 0),
        (vec!["verify", "--poset", "linear(2) | linear(2,a1)"], 0),
        (vec!["verify", "--poset", "partitions(2)@a1 | partitions(2)@a2"], 0),
        (vec!["edge", "--poset", "partitions(4)", "--seed", "1", "--compare-seed", "2"], 0),
        (vec!["edge", "--poset", "partitions(4)", "--closed-form", "--check-monodromy", "--compare-seed", "0"], 0),
        (vec!["edge", "--poset", "boolean(a1,a2,a3)", "--closed-form", "--check-monodromy", "--compare-seed", "0"], 0),
        (vec!["product", "--poset", "linear(2)", "--with", "linear(2,a1)"], 0),
        (
            vec![
                "product", "--poset", "partitions(2)@a1", "--with", "partitions(2)@a2", "--closed-form", "--base1",
                "1/(1-a1/a8)", "--base2", "1/(1-a2/a8)",
            ],
            0,
        ),
        (vec!["dual", "--poset", "linear(4)"], 0),
        (vec!["dual", "--poset", "partitions(3)"], 0),
        (vec!["verify", "--poset", "partitions(3)", "--submodules", "10"], 0),
        (vec!["hom", "--poset", "partitions(3)", "--target", "partitions(2)"], 0),
        (vec!["sym", "--poset", "partitions(4)"], 0),
        (vec!["sym", "--poset", "linear(4)"], 0),
        (vec!["reconstruct", "--poset", "boolean(a1,a2,a3)"], 0),
        (vec!["reconstruct", "--poset", "partitions(3)", "--corrupt", "d-minus"], 1),
        (vec!["reconstruct", "--poset", "partitions(3)", "--corrupt", "spectrum"], 1),
        (vec!["reconstruct", "--poset", "partitions(3)", "--corrupt", "completeness"], 1),
    ];
    for (args, want) in runs {
        let o = bqt(&args);
        assert_eq!(code(&o), want, "{args:?}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn restricted_partitions_vanish_above_level_two() {
    let r = report(&bqt(&["rep", "--poset", "partitions", "--max-boxes", "6", "--max-cols", "2"]));
    assert_eq!(r["representation"]["dims"], serde_json::json!([16, 21, 15, 0, 0, 0, 0]));
}

#[test]
fn gieseker_product_equals_the_closed_form() {
    let r = report(&bqt(&[
        "product", "--poset", "partitions(2)@a1", "--with", "partitions(2)@a2", "--closed-form", "--base1", "1/(1-a1/a8)",
        "--base2", "1/(1-a2/a8)",
    ]));
    assert_eq!(r["closed_form"]["equal"], true);
    assert_eq!(r["tensor"]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn corrupted_reconstruction_names_the_assumption() {
    for (how, name) in [("d-minus", "d_minus"), ("spectrum", "simple_spectrum"), ("completeness", "completeness")] {
        let r = report(&bqt(&["reconstruct", "--poset", "partitions(3)", "--corrupt", how]));
        assert_eq!(r["assumption_violated"]["assumption"], name);
    }
}
