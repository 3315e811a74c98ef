//! End-to-end tests of the `digitop` binary: exit codes, exact output
//! formats, pipeline composability, and trace verification through the
//! command-line surface.

use std::io::Write;
use std::process::{Command, Stdio};

const C4: &str =
    r#"{"vertices":["1","2","3","4"],"edges":[["1","2"],["2","3"],["3","4"],["4","1"]]}"#;
const C6: &str = r#"{"vertices":["1","2","3","4","5","6"],"edges":[["1","2"],["2","3"],["3","4"],["4","5"],["5","6"],["1","6"]]}"#;
const PATH3: &str = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;
const TRIANGLE: &str = r#"{"vertices":["1","2","3"],"edges":[["1","2"],["1","3"],["2","3"]]}"#;

fn digitop(args: &[&str], stdin: &str) -> (String, String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_digitop"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary must spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    (
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
        output.status.code().expect("no signal"),
    )
}

#[test]
fn check_rejects_the_four_cycle_with_exit_one() {
    let (stdout, _, code) = digitop(&["check"], C4);
    assert_eq!(code, 1);
    assert_eq!(stdout.trim(), r#"{"contractible":false}"#);
}

#[test]
fn check_emits_a_certificate_for_a_contractible_graph() {
    let (stdout, _, code) = digitop(&["check"], PATH3);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["contractible"], serde_json::json!(true));
    let order = value["certificate"]["deletion_order"].as_array().unwrap();
    assert_eq!(order.len(), 2, "a 3-vertex graph reduces in two deletions");
}

#[test]
fn check_reports_undecided_on_a_tiny_budget() {
    let (stdout, stderr, code) = digitop(&["check", "--budget", "1"], C6);
    assert_eq!(code, 2);
    assert_eq!(stdout.trim(), r#"{"contractible":null}"#);
    assert!(stderr.contains("undecided"));
}

#[test]
fn malformed_input_exits_three_with_a_position() {
    let (_, stderr, code) = digitop(&["check"], r#"{"vertices":["a""#);
    assert_eq!(code, 3);
    assert!(
        stderr.contains("line") && stderr.contains("column"),
        "parse diagnostics must cite a position: {stderr}"
    );
}

#[test]
fn usage_errors_exit_three() {
    let (_, _, code) = digitop(&["check", "--no-such-flag"], "");
    assert_eq!(code, 3);
    let (_, _, code) = digitop(&["cubify", "--radius", "1"], ""); // missing --n
    assert_eq!(code, 3);
}

#[test]
fn help_exits_zero() {
    let (stdout, _, code) = digitop(&["--help"], "");
    assert_eq!(code, 0);
    assert!(stdout.contains("thin"));
}

#[test]
fn simple_lists_every_candidate_of_the_triangle() {
    let (stdout, _, code) = digitop(&["simple"], TRIANGLE);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["points"]["simple"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(
        value["edges"]["simple"],
        serde_json::json!([["1", "2"], ["1", "3"], ["2", "3"]])
    );
    assert_eq!(
        value["sets"]["simple"],
        serde_json::json!([["1", "2"], ["1", "3"], ["2", "3"], ["1", "2", "3"]])
    );
    assert_eq!(value["points"]["undecided"], serde_json::json!([]));
}

#[test]
fn thin_reports_the_hexagon_contraction() {
    let (stdout, _, code) = digitop(&["thin"], C6);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["skeleton"]["vertices"].as_array().unwrap().len(), 4);
    let steps = value["trace"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["kind"], serde_json::json!("contract_set"));
    assert_eq!(steps[0]["set"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(value["stats"]["sets_contracted"], serde_json::json!(1));
}

#[test]
fn emitted_graphs_feed_graph_consuming_subcommands() {
    let (skeleton, _, code) = digitop(&["thin", "--emit", "skeleton"], C6);
    assert_eq!(code, 0);
    let (invariants, _, code) = digitop(&["invariants"], &skeleton);
    assert_eq!(code, 0);
    assert_eq!(
        invariants.trim(),
        r#"{"euler":0,"betti":[1,1],"clique_counts":[4,4]}"#
    );
}

#[test]
fn the_minimal_two_sphere_has_spherical_invariants() {
    let (sphere, _, code) = digitop(&["sphere", "--n", "2"], "");
    assert_eq!(code, 0);
    let (invariants, _, code) = digitop(&["invariants"], &sphere);
    assert_eq!(code, 0);
    assert_eq!(
        invariants.trim(),
        r#"{"euler":2,"betti":[1,0,1],"clique_counts":[6,12,8]}"#
    );
}

#[test]
fn the_minimal_one_sphere_is_a_four_cycle() {
    let (sphere, _, code) = digitop(&["sphere", "--n", "1"], "");
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&sphere).unwrap();
    assert_eq!(value["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(value["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn cubify_emits_the_exact_unit_circle_model() {
    let (stdout, _, code) = digitop(
        &["cubify", "--n", "2", "--radius", "1", "--emit", "model"],
        "",
    );
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["n"], serde_json::json!(2));
    assert_eq!(value["L"], serde_json::json!(1.0));
    assert_eq!(value["cubes"].as_array().unwrap().len(), 12);
}

#[test]
fn cubified_circle_thins_to_a_four_cycle() {
    let (graph, _, code) = digitop(&["cubify", "--n", "2", "--radius", "1.5"], "");
    assert_eq!(code, 0);
    let (skeleton, _, code) = digitop(&["thin", "--emit", "skeleton"], &graph);
    assert_eq!(code, 0);
    let (invariants, _, code) = digitop(&["invariants"], &skeleton);
    assert_eq!(code, 0);
    assert_eq!(
        invariants.trim(),
        r#"{"euler":0,"betti":[1,1],"clique_counts":[4,4]}"#
    );
}

#[test]
fn verify_trace_accepts_genuine_and_rejects_forged_traces() {
    let dir = tempfile::tempdir().unwrap();
    let input_path = dir.path().join("c6.json");
    std::fs::write(&input_path, C6).unwrap();

    let (report, _, code) = digitop(&["thin", "--input", input_path.to_str().unwrap()], "");
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&report).unwrap();

    let trace_path = dir.path().join("trace.json");
    std::fs::write(&trace_path, report["trace"].to_string()).unwrap();

    let (final_graph, _, code) = digitop(
        &[
            "verify-trace",
            "--input",
            input_path.to_str().unwrap(),
            "--trace",
            trace_path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 0, "a genuine trace must verify");
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&final_graph).unwrap(),
        report["skeleton"]
    );

    // Forge the contracted set; {1, 2, 4} is disconnected in C6, so the
    // step no longer satisfies its precondition.
    let mut forged = report["trace"].clone();
    forged["steps"][0]["set"] = serde_json::json!(["1", "2", "4"]);
    let forged_path = dir.path().join("forged.json");
    std::fs::write(&forged_path, forged.to_string()).unwrap();

    let (_, stderr, code) = digitop(
        &[
            "verify-trace",
            "--input",
            input_path.to_str().unwrap(),
            "--trace",
            forged_path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 1, "a forged trace must be rejected");
    assert!(stderr.contains("rejected"), "diagnostic: {stderr}");
    assert!(stderr.contains("0"), "the failing step index is named: {stderr}");
}

#[test]
fn export_dot_prints_the_exact_graph() {
    let (stdout, _, code) = digitop(&["export-dot"], PATH3);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "graph {\n  \"a\";\n  \"b\";\n  \"c\";\n  \"a\" -- \"b\";\n  \"b\" -- \"c\";\n}\n"
    );
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let (stdout, _, code) = digitop(
        &["check", "--output", out_path.to_str().unwrap()],
        TRIANGLE,
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "with --output nothing goes to stdout");
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains(r#""contractible":true"#));
}

#[test]
fn thin_with_tiny_budget_reports_partial_results() {
    let (stdout, stderr, code) = digitop(&["thin", "--budget", "0"], C6);
    assert_eq!(code, 2);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    // Nothing was decided, so the "skeleton" is the unchanged input.
    assert_eq!(value["skeleton"]["vertices"].as_array().unwrap().len(), 6);
    assert!(stderr.contains("undecided"));
}
