//! Every `console` example in the README is replayed against the binary, and
//! a set of fixed invocations must produce identical bytes on repeated runs.

use std::path::{Path, PathBuf};
use std::process::Command;

use superklr_cli::run;

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Example {
    args: Vec<String>,
    expected: String,
}

/// `$ superklr ...` lines inside ```console blocks, each followed by its
/// output; a trailing `[exit N]` line records a nonzero status.
fn readme_examples() -> Vec<Example> {
    let text = std::fs::read_to_string(workspace_root().join("README.md")).unwrap();
    let mut out = Vec::new();
    let mut in_block = false;
    let mut current: Option<Example> = None;
    for line in text.lines() {
        if line.starts_with("```console") {
            in_block = true;
            continue;
        }
        if !in_block {
            continue;
        }
        if line.starts_with("```") {
            in_block = false;
            out.extend(current.take());
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ superklr ") {
            out.extend(current.take());
            current = Some(Example {
                args: cmd.split_whitespace().map(String::from).collect(),
                expected: String::new(),
            });
        } else if let Some(ex) = current.as_mut() {
            ex.expected.push_str(line);
            ex.expected.push('\n');
        }
    }
    out
}

fn invoke_binary(args: &[String]) -> String {
    let output = Command::new(env!("CARGO_BIN_EXE_superklr"))
        .args(args)
        .current_dir(workspace_root())
        .env_remove("SUPERKLR_MAX_N")
        .output()
        .unwrap();
    let mut text = String::from_utf8(output.stdout).unwrap();
    text.push_str(&String::from_utf8(output.stderr).unwrap());
    let code = output.status.code().unwrap();
    if code != 0 {
        text.push_str(&format!("[exit {code}]\n"));
    }
    text
}

#[test]
fn readme_examples_match() {
    let examples = readme_examples();
    assert!(examples.len() >= 15, "found only {} examples", examples.len());
    for ex in &examples {
        assert_eq!(invoke_binary(&ex.args), ex.expected, "superklr {}", ex.args.join(" "));
    }
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> superklr_cli::Outcome {
    let mut full = vec!["superklr".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    run(full, None)
}

fn invocations() -> Vec<Vec<String>> {
    let b2 = data("b2.json");
    let a3 = data("a3_mixed.json");
    let bad = data("bad_parity.json");
    let raw: Vec<Vec<&str>> = vec![
        vec!["dim", "--cartan", &b2, "--lambda", "2,1", "--nu", "1,2,1"],
        vec!["--json", "dim", "--cartan", &b2, "--lambda", "2,1", "--nu", "1,2,1", "--term", "(1 3)"],
        vec!["--json", "dim-table", "--cartan", &a3, "--lambda", "1,1,1", "--beta", "a:1,b:2"],
        vec!["--json", "basis", "onh", "--n", "3", "--ell", "3", "--list"],
        vec!["onh", "table", "--n", "2", "--ell", "3"],
        vec!["--json", "onh", "table", "--n", "2", "--ell", "2", "--prime", "5"],
        vec!["--json", "connectivity", "--cartan", &a3, "--lambda", "2,1,1", "--beta", "a:2,b:1,c:1"],
        vec!["--json", "tilde", "--cartan", &a3, "--lambda", "2,1,1", "--labels", "a,c", "--b", "2,2"],
        vec!["oracle-check", "--cartan", &a3, "--lambda", "1,2,0", "--nu", "a,b,a,c", "--nu-prime", "b,a,c,a"],
        vec!["--json", "validate", &bad],
    ];
    raw.into_iter().map(|v| v.into_iter().map(String::from).collect()).collect()
}

#[test]
fn output_is_byte_stable() {
    for args in invocations() {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = invoke(&refs);
        for _ in 0..3 {
            assert_eq!(invoke(&refs), first, "{args:?}");
        }
        assert_eq!(invoke_binary(&args), format!("{}{}{}", first.stdout, first.stderr, exit_line(first.code)));
    }
}

fn exit_line(code: i32) -> String {
    if code == 0 {
        String::new()
    } else {
        format!("[exit {code}]\n")
    }
}

#[test]
fn json_documents_carry_the_schema_version() {
    for args in invocations().into_iter().filter(|a| a[0] == "--json") {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = invoke(&refs);
        let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["schema"], 1, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let b2 = data("b2.json");
    assert_eq!(invoke(&["validate", &data("not_json.json")]).code, 1);
    assert_eq!(invoke(&["validate", &data("missing.json")]).code, 1);
    assert_eq!(invoke(&["validate", &data("bad_parity.json")]).code, 2);
    assert_eq!(invoke(&["frobnicate"]).code, 1);
    assert_eq!(invoke(&["dim", "--cartan", &b2, "--lambda", "2,1,0", "--nu", "1"]).code, 1);
    assert_eq!(invoke(&["dim", "--cartan", &b2, "--lambda", "2,1", "--nu", "1,7"]).code, 1);
    // nu' not a rearrangement of nu is a well-posed query with answer 0
    let zero = invoke(&["dim", "--cartan", &b2, "--lambda", "2,1", "--nu", "1,1", "--nu-prime", "1,2"]);
    assert_eq!((zero.code, zero.stdout.as_str()), (0, "0\n"));
    assert_eq!(invoke(&["dim", "--cartan", &b2, "--lambda", "2,1", "--nu", "1,2", "--nu-prime", "1"]).code, 2);
    assert_eq!(invoke(&["tilde", "--cartan", &b2, "--lambda", "2,1", "--labels", "1,1", "--b", "1,1"]).code, 2);
    assert_eq!(invoke(&["onh", "mult", "--n", "2", "--ell", "2", "--prime", "4", "x1", "x2"]).code, 2);
    assert_eq!(invoke(&["onh", "mult", "--n", "2", "--ell", "2", "x3", "x1"]).code, 2);
    assert_eq!(invoke(&["onh", "mult", "--n", "2", "--ell", "2", "x1*", "x1"]).code, 1);
    assert_eq!(invoke(&["onh", "dim", "--n", "7", "--ell", "7"]).code, 3);
    assert_eq!(invoke(&["--max-n", "2", "dim", "--cartan", &b2, "--lambda", "2,1", "--nu", "1,2,1"]).code, 3);
    assert_eq!(invoke(&["dim-table", "--cartan", &b2, "--lambda", "2,1", "--beta", "1:3,2:3", "--cap", "5"]).code, 3);
    let zero_answer = invoke(&["onh", "dim", "--n", "3", "--ell", "2"]);
    assert_eq!((zero_answer.code, zero_answer.stdout.as_str()), (0, "0\n"));
}

#[test]
fn environment_sets_the_default_cap() {
    let b2 = data("b2.json");
    let args: Vec<String> = ["superklr", "dim", "--cartan", &b2, "--lambda", "2,1", "--nu", "1,2,1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(run(args.clone(), Some("2")).code, 3);
    assert_eq!(run(args.clone(), Some("3")).code, 0);
    assert_eq!(run(args.clone(), Some("many")).code, 1);
    let mut flagged = args.clone();
    flagged.insert(1, "--max-n".into());
    flagged.insert(2, "3".into());
    assert_eq!(run(flagged, Some("2")).code, 0);
}

#[test]
fn empty_sequence_has_dimension_one() {
    let out = invoke(&["dim", "--cartan", &data("b2.json"), "--lambda", "0,0", "--nu", ""]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "1\n"));
}
