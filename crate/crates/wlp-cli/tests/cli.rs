//! End-to-end tests running the compiled `wlp` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wlp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_reports_optimum_for_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "path.json",
        r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2]]}"#,
    );
    let report = stdout_json(&wlp(&["solve", "--input", &input]));
    assert_eq!(report["optimum"], 0);
    assert_eq!(report["planar"], true);
    assert!(report["witness"]["positions"].is_object());
}

#[test]
fn solve_reports_null_optimum_for_k5() {
    let dir = tempfile::tempdir().unwrap();
    let edges: Vec<String> = (0..5)
        .flat_map(|u| (u + 1..5).map(move |v| format!("[{u},{v}]")))
        .collect();
    let input = write(
        dir.path(),
        "k5.json",
        &format!(
            r#"{{"vertices":[0,1,2,3,4],"edges":[{}]}}"#,
            edges.join(",")
        ),
    );
    let report = stdout_json(&wlp(&["solve", "--input", &input]));
    assert!(report["optimum"].is_null());
    assert_eq!(report["planar"], false);
}

#[test]
fn decide_and_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "c4.json",
        r#"{"vertices":[0,1,2,3],"edges":[[0,1],[1,2],[2,3],[0,3]]}"#,
    );
    let witness = dir.path().join("w.json");
    let report = stdout_json(&wlp(&[
        "decide",
        "--input",
        &input,
        "--span",
        "1",
        "--output",
        witness.to_str().unwrap(),
    ]));
    assert_eq!(report["feasible"], true);

    let verdict = stdout_json(&wlp(&[
        "check",
        "--input",
        &input,
        "--drawing",
        witness.to_str().unwrap(),
    ]));
    assert_eq!(verdict["valid"], true);
    assert_eq!(verdict["matches_input"], true);
    assert!(verdict["span"].as_i64().unwrap() <= 1);
}

#[test]
fn generated_cycle_tree_draws_with_small_span() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("ct.json");
    let out = wlp(&[
        "generate",
        "--family",
        "random-ct",
        "--n",
        "40",
        "--seed",
        "7",
        "--three-connected",
        "--output",
        graph.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let svg = dir.path().join("ct.svg");
    let report = stdout_json(&wlp(&[
        "draw",
        "--input",
        graph.to_str().unwrap(),
        "--mode",
        "3conn-cycle-tree",
        "--svg",
        svg.to_str().unwrap(),
    ]));
    assert!(report["span"].as_i64().unwrap() <= 4);
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
}

#[test]
fn drawing_feeds_strictify_and_queue_layout() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("ct.json");
    assert!(wlp(&[
        "generate",
        "--family",
        "random-ct",
        "--n",
        "30",
        "--seed",
        "3",
        "--output",
        graph.to_str().unwrap(),
    ])
    .status
    .success());

    let drawing = dir.path().join("d.json");
    stdout_json(&wlp(&[
        "draw",
        "--input",
        graph.to_str().unwrap(),
        "--mode",
        "cycle-tree",
        "--output",
        drawing.to_str().unwrap(),
    ]));

    let strict = stdout_json(&wlp(&["strictify", "--drawing", drawing.to_str().unwrap()]));
    assert!(strict["span"].as_i64().is_some());

    let queues = stdout_json(&wlp(&[
        "queue-layout",
        "--drawing",
        drawing.to_str().unwrap(),
    ]));
    assert_eq!(queues["nesting_violations"], 0);
    assert!(queues["num_queues"].as_u64().is_some());
}

#[test]
fn kernelize_vc_shrinks_a_star() {
    let dir = tempfile::tempdir().unwrap();
    let edges: Vec<String> = (1..=10).map(|v| format!("[0,{v}]")).collect();
    let input = write(
        dir.path(),
        "star.json",
        &format!(
            r#"{{"vertices":[0,1,2,3,4,5,6,7,8,9,10],"edges":[{}],"cover":[0]}}"#,
            edges.join(",")
        ),
    );
    let kernel = dir.path().join("kernel.json");
    let trace = dir.path().join("trace.json");
    let report = stdout_json(&wlp(&[
        "kernelize",
        "--input",
        &input,
        "--param",
        "vc",
        "--span",
        "1",
        "--output",
        kernel.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]));
    assert_eq!(report["kernel_vertices"], 4);
    assert_eq!(report["removed"], 7);
    assert_eq!(report["threshold"], "undecided");

    // The kernel file round-trips through every graph-consuming verb.
    let solved = stdout_json(&wlp(&["solve", "--input", kernel.to_str().unwrap()]));
    assert_eq!(solved["optimum"], 1);
    let trace_doc: Value =
        serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert!(trace_doc["steps"].as_array().unwrap().len() >= 1);
}

#[test]
fn reduce_emits_a_solvable_graph() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "edge.json",
        r#"{"vertices":[0,1],"edges":[[0,1]]}"#,
    );
    let reduced = dir.path().join("reduced.json");
    assert!(wlp(&[
        "reduce",
        "--input",
        &input,
        "--span",
        "1",
        "--output",
        reduced.to_str().unwrap(),
    ])
    .status
    .success());
    let report = stdout_json(&wlp(&["solve", "--input", reduced.to_str().unwrap()]));
    assert!(report["optimum"].as_i64().is_some());
}

#[test]
fn stdin_dash_is_accepted() {
    use std::io::Write as _;
    let mut child = Command::new(env!("CARGO_BIN_EXE_wlp"))
        .args(["solve", "--input", "-", "--no-witness"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"vertices":[0,1],"edges":[[0,1]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let report = stdout_json(&out);
    assert_eq!(report["optimum"], 0);
}

#[test]
fn domain_errors_exit_one_with_json_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.json", r#"{"vertices":[0],"edges":[[0,1]]}"#);
    let out = wlp(&["solve", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(err["error"].is_string());
    assert!(err["message"].is_string());
}

#[test]
fn draw_without_rotation_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "plain.json",
        r#"{"vertices":[0,1],"edges":[[0,1]]}"#,
    );
    let out = wlp(&["draw", "--input", &input, "--mode", "cycle-tree"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = wlp(&["solve", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wlp(&["no-such-verb"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_families_emit_parsable_graphs() {
    let cases: &[&[&str]] = &[
        &["--family", "kplus", "--alpha", "4"],
        &["--family", "w", "--i", "2", "--h", "1"],
        &["--family", "stacked", "--k", "2"],
        &["--family", "nested", "--r", "3"],
        &["--family", "3conn-lower", "--n", "43"],
        &["--family", "ct-lower", "--n", "30"],
        &["--family", "random-planar", "--n", "12", "--seed", "5"],
    ];
    for case in cases {
        let mut args = vec!["generate"];
        args.extend_from_slice(case);
        let doc = stdout_json(&wlp(&args));
        assert!(
            doc["vertices"].as_array().unwrap().len() > 1,
            "family args {case:?}"
        );
    }
}
