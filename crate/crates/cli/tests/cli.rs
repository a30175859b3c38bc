use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const EXAMPLE: &str = r#"{"bars":[{"birth":1,"death":null},{"birth":2,"death":7},{"birth":3,"death":6},{"birth":4,"death":5}]}"#;
const TWO_BAR: &str = r#"{"bars":[{"birth":1,"death":null},{"birth":2,"death":7}]}"#;

fn elder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elder")).args(args).output().unwrap()
}

fn elder_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_elder"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(TempDir::new().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }
}

#[test]
fn count_example_barcode() {
    let files = Files::new();
    let ex = files.put("example.json", EXAMPLE);
    assert_eq!(stdout(&elder(&["count", &ex, "--chiral"])), "48");
    assert_eq!(stdout(&elder(&["count", &ex])), "48");
    assert_eq!(stdout(&elder(&["count", &ex, "--functions"])), "48");
    assert_eq!(stdout(&elder(&["count", &ex, "--merge-trees"])), "6");
}

#[test]
fn enumerate_two_bar_functions() {
    let files = Files::new();
    let two = files.put("two-bar.json", TWO_BAR);
    assert_eq!(stdout(&elder(&["enumerate", &two, "--functions"])), "[[1,7,2],[2,7,1]]");
}

#[test]
fn enumerate_is_independent_of_jobs() {
    let files = Files::new();
    let ex = files.put("example.json", EXAMPLE);
    for mode in ["--chiral", "--functions", "--merge-trees"] {
        let serial = elder(&["enumerate", &ex, mode]);
        let parallel = elder(&["enumerate", &ex, mode, "--jobs", "4"]);
        assert_eq!(stdout(&serial), stdout(&parallel));
    }
    let trees: serde_json::Value = serde_json::from_str(&stdout(&elder(&["enumerate", &ex]))).unwrap();
    assert_eq!(trees.as_array().unwrap().len(), 48);
}

#[test]
fn barcode_of_function() {
    let out = elder_stdin(&["barcode", "-"], r#"{"critical_values":[1,7,2]}"#);
    assert_eq!(stdout(&out), TWO_BAR);
    let out = elder_stdin(&["barcode", "-"], r#"{"breakpoints":[[0,1],[0.25,4],[0.5,7],[1,2]]}"#);
    assert_eq!(stdout(&out), TWO_BAR);
}

#[test]
fn tree_elder_reconstruct_pipeline() {
    let tree = stdout(&elder_stdin(&["tree", "-"], r#"{"critical_values":[1,7,2]}"#));
    assert_eq!(tree, r#"{"height":7,"left":{"height":1},"right":{"height":2}}"#);
    assert_eq!(stdout(&elder_stdin(&["elder", "-"], &tree)), TWO_BAR);
    let function = stdout(&elder_stdin(&["reconstruct", "-"], &tree));
    assert_eq!(function, r#"{"breakpoints":[[0,1],[0.5,7],[1,2]],"critical_values":[1,7,2]}"#);
    // reconstructed output parses back as a function
    assert_eq!(stdout(&elder_stdin(&["barcode", "-"], &function)), TWO_BAR);

    let unordered = r#"{"height":7,"children":[{"height":2},{"height":1}]}"#;
    assert_eq!(stdout(&elder_stdin(&["elder", "-"], unordered)), TWO_BAR);
}

#[test]
fn tree_dot() {
    let dot = stdout(&elder_stdin(&["tree", "-", "--dot"], r#"{"critical_values":[2,7,1]}"#));
    assert!(dot.starts_with("digraph merge_tree {"));
    assert!(dot.contains("[style=invis]"));
}

#[test]
fn rank_subcommand() {
    let files = Files::new();
    let f = files.put("f.json", r#"{"critical_values":[1,7,2]}"#);
    assert_eq!(stdout(&elder(&["rank", &f, "--r", "3", "--t", "8"])), "1");
    assert_eq!(stdout(&elder(&["rank", &f, "--r", "3", "--t", "5"])), "2");
    assert_eq!(stdout(&elder(&["rank", &f, "--r", "-1", "--t", "0"])), "0");
    let bad = elder(&["rank", &f, "--r", "5", "--t", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("BadPair"));
}

#[test]
fn strata_and_verify() {
    let files = Files::new();
    let ex = files.put("example.json", EXAMPLE);
    let chain = files.put(
        "chain.json",
        r#"{"bars":[{"birth":0,"death":null},{"birth":1,"death":9},{"birth":2,"death":8},{"birth":3,"death":7}]}"#,
    );
    let out: serde_json::Value = serde_json::from_str(&stdout(&elder(&["strata", &ex, &chain]))).unwrap();
    assert_eq!(out["same_stratum"], true);
    assert_eq!(out["poset1"], serde_json::json!([[2, 1], [3, 1], [3, 2], [4, 1], [4, 2], [4, 3]]));

    let report: serde_json::Value = serde_json::from_str(&stdout(&elder(&["verify", &ex]))).unwrap();
    assert_eq!(report["all_equal"], true);
    assert_eq!(report["brute_count"], 48);
    assert_eq!(report["partition_sum"], 144);
}

#[test]
fn validation_errors_exit_one_with_error_name() {
    let cases: &[(&[&str], &str, &str)] = &[
        (&["barcode", "-"], r#"{"critical_values":[1,7]}"#, "EvenLength"),
        (&["barcode", "-"], r#"{"critical_values":[3,1,4]}"#, "NotAlternating"),
        (&["barcode", "-"], r#"{"breakpoints":[[0,5],[1,0]]}"#, "BoundaryNotMin"),
        (&["count", "-"], r#"{"bars":[{"birth":2,"death":7}]}"#, "NoInfiniteBar"),
        (
            &["count", "-"],
            r#"{"bars":[{"birth":1,"death":null},{"birth":2,"death":7},{"birth":3,"death":7}]}"#,
            "DuplicateDeath",
        ),
        (&["enumerate", "-", "--functions"], r#"{"bars":[{"birth":1,"death":null}]}"#, "DegenerateBarcode"),
        (&["reconstruct", "-"], r#"{"height":1}"#, "TooSmall"),
        (&["barcode", "-"], "not json", "BadJson"),
    ];
    for (args, input, name) in cases {
        let out = elder_stdin(args, input);
        assert_eq!(out.status.code(), Some(1), "{args:?} {input}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(name), "expected {name}, got {err}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(elder(&[]).status.code(), Some(2));
    assert_eq!(elder(&["count"]).status.code(), Some(2));
    assert_eq!(elder(&["count", "x.json", "--chiral", "--functions"]).status.code(), Some(2));
    assert_eq!(elder(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn single_bar_counts() {
    let single = r#"{"bars":[{"birth":1,"death":null}]}"#;
    assert_eq!(stdout(&elder_stdin(&["count", "-", "--chiral"], single)), "1");
    assert_eq!(stdout(&elder_stdin(&["enumerate", "-"], single)), r#"[{"height":1}]"#);
}
