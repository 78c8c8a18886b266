//! End-to-end runs of the binary against the fixture corpus: output
//! formats, exit codes, and error reporting.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn build_prints_the_graph_file() {
    let output = run(&["build", &fixture("four_point_semicrossed.sys")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "graph semicrossed\n\
         vertices 1 2 3 4\n\
         edge f@1 1 2 1\n\
         edge f@2 2 3 1\n\
         edge f@3 3 3 1\n\
         edge f@4 4 3 1\n\
         edge g@1 1 2 2\n\
         edge g@2 2 4 2\n\
         edge g@3 3 4 2\n\
         edge g@4 4 4 2\n"
    );
}

#[test]
fn build_output_reparses_to_the_same_graph() {
    let output = run(&["build", &fixture("four_point_tensor.sys")]);
    let text = stdout(&output);
    let reparsed = graphinv::graph::parse_graph(&text).unwrap();
    assert_eq!(reparsed.serialize(), text);
}

#[test]
fn build_rejects_graph_files() {
    let output = run(&["build", &fixture("four_point_colored.graph")]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("build expects a system file"));
}

#[test]
fn report_on_the_four_point_semicrossed_system() {
    let output = run(&["report", &fixture("four_point_semicrossed.sys")]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("algebra_class: semicrossed\n"));
    assert!(text.contains("vertex_count: 4\n"));
    assert!(text.contains("edge_count: 8\n"));
    assert!(text.contains("multiplicity_max: 2\n"));
    assert!(text.contains("edge_free: true\n"));
    assert!(text.contains("minimal_color_count: 2\n"));
    assert!(text.contains("one_colorable: false\n"));
}

#[test]
fn report_accepts_graph_files_by_sniffing() {
    let output = run(&["report", &fixture("four_point_colored.graph")]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("algebra_class: colored\n"));
    assert!(text.contains("edge_count: 8\n"));
}

#[test]
fn report_partition_override_restores_the_generator_classes() {
    // On the raw graph file the default partition is discrete; passing
    // the generator partition inline recovers the system's coloring
    // fields.
    let build = run(&["build", &fixture("four_point_semicrossed.sys")]);
    let dir = std::env::temp_dir().join("graphinv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let graph_path = dir.join("four_point_built.graph");
    std::fs::write(&graph_path, stdout(&build)).unwrap();

    let generator = "class f@1 f@2 f@3 f@4\nclass g@1 g@2 g@3 g@4\n";
    let output = run(&[
        "report",
        graph_path.to_str().unwrap(),
        "--partition",
        generator,
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("minimal_color_count: 2\n"), "{text}");
    assert!(text.contains("one_colorable: false\n"));
}

#[test]
fn compare_exit_codes_follow_the_verdict() {
    let equivalent = run(&[
        "compare",
        &fixture("four_point_tensor.sys"),
        &fixture("four_point_semicrossed.sys"),
        "--ignore-colors",
    ]);
    assert_eq!(equivalent.status.code(), Some(0));
    assert!(stdout(&equivalent).starts_with("EQUIVALENT\n"));

    let distinguished = run(&[
        "compare",
        &fixture("four_point_tensor.sys"),
        &fixture("four_point_semicrossed.sys"),
    ]);
    assert_eq!(distinguished.status.code(), Some(1));
    assert_eq!(
        stdout(&distinguished),
        "DISTINGUISHED minimal_color_count: 1 vs 2\n"
    );
}

#[test]
fn compare_prints_a_witness_when_equivalent() {
    let output = run(&[
        "compare",
        &fixture("four_point_semicrossed.sys"),
        &fixture("four_point_colored.graph"),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.starts_with("EQUIVALENT\n"));
    assert!(text.contains("vertices: "));
    assert!(text.contains("edges: "));
}

#[test]
fn partitions_of_three_loops() {
    let output = run(&["partitions", &fixture("three_loops.sys")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "partition 1\n\
         class id@0 id@1 id@2\n\
         partition 2\n\
         class id@0 id@1\n\
         class id@2\n\
         partition 3\n\
         class id@0 id@2\n\
         class id@1\n\
         partition 4\n\
         class id@0\n\
         class id@1 id@2\n\
         partition 5\n\
         class id@0\n\
         class id@1\n\
         class id@2\n\
         cover 1 2\n\
         cover 1 3\n\
         cover 1 4\n\
         cover 2 5\n\
         cover 3 5\n\
         cover 4 5\n\
         minimal 1\n\
         maximal 5\n"
    );
}

#[test]
fn partitions_cap_is_reported_with_the_flag_name() {
    let output = run(&[
        "partitions",
        &fixture("four_point_semicrossed.sys"),
        "--max-partition-edges",
        "5",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("--max-partition-edges"));
}

#[test]
fn colorings_of_the_four_point_semicrossed_system() {
    let output = run(&["colorings", &fixture("four_point_semicrossed.sys")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "class f@1 f@2 f@3 f@4\n\
         class g@1 g@2 g@3 g@4\n\
         conflict f@1 g@1\n\
         minimal_color_count 2\n\
         color f@1 1\n\
         color g@1 2\n\
         maximal true\n"
    );
}

#[test]
fn colorings_of_a_plain_graph_fail_cleanly() {
    let dir = std::env::temp_dir().join("graphinv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("plain.graph");
    std::fs::write(&path, "graph plain\nvertices a\nedge e a a 1\n").unwrap();
    let output = run(&["colorings", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("coloring semantics undefined for plain graphs"));
}

#[test]
fn paths_lists_the_two_short_routes() {
    let output = run(&[
        "paths",
        &fixture("four_point_semicrossed.sys"),
        "--from",
        "1",
        "--to",
        "3",
        "--max-len",
        "2",
    ]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "path f@1 f@2\npath g@1 f@2\n");
}

#[test]
fn paths_guard_is_an_error() {
    let output = run(&[
        "paths",
        &fixture("three_loops.sys"),
        "--from",
        "0",
        "--to",
        "0",
        "--max-len",
        "99",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("guard"));
}

#[test]
fn dot_uses_the_fixed_palette() {
    let output = run(&["dot", &fixture("four_point_semicrossed.sys")]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("digraph G {\n"));
    assert!(text.contains("\"1\" -> \"2\" [label=\"f@1\" color=\"black\"];\n"));
    assert!(text.contains("\"1\" -> \"2\" [label=\"g@1\" color=\"red\"];\n"));
    assert!(text.ends_with("}\n"));
}

#[test]
fn dot_spectral_fallback_beyond_twelve_colors() {
    let dir = std::env::temp_dir().join("graphinv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("many_colors.graph");
    std::fs::write(&path, "graph plain\nvertices a\nedge e a a 13\n").unwrap();
    let output = run(&["dot", path.to_str().unwrap()]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("color=\"/spectral11/3\""));
}

#[test]
fn missing_files_exit_two() {
    let output = run(&["report", "no-such-file.sys"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("no-such-file.sys"));
}

#[test]
fn parse_errors_name_file_line_and_cause() {
    let dir = std::env::temp_dir().join("graphinv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.graph");
    std::fs::write(&path, "graph plain\nvertices 1 2\nedge e 5 1 1\n").unwrap();
    let output = run(&["report", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let err = stderr(&output);
    assert!(err.contains("bad.graph:3:"), "{err}");
    assert!(err.contains("unknown vertex \"5\""), "{err}");
}

#[test]
fn unknown_headers_are_rejected() {
    let dir = std::env::temp_dir().join("graphinv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mystery.txt");
    std::fs::write(&path, "mystery file\n").unwrap();
    let output = run(&["report", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("expected a `graph` or `system` header"));
}
