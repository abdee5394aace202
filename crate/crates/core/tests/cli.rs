use std::path::{Path, PathBuf};
use std::process::Command;

use cramer_core::cli::format::{affine_expressions, affine_from_json};
use cramer_core::Rational;
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cramer(args: &[&str]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_cramer"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: output.status.code().expect("exit code"),
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn chain_file(dir: &TempDir, n: usize) -> PathBuf {
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let row: Vec<&str> = (0..n)
                .map(|k| if k == i { "1" } else if k == i + 1 { "-1" } else { "0" })
                .collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    let rhs = vec!["1"; n].join(", ");
    write(dir, &format!("chain{n}.json"), &format!(r#"{{"matrix": [{}], "rhs": [{rhs}]}}"#, rows.join(", ")))
}

fn run_path(args: &[&str], path: &Path) -> Run {
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    cramer(&all)
}

#[test]
fn det_of_chain_and_identity() {
    let dir = TempDir::new().unwrap();
    let r = run_path(&["det"], &chain_file(&dir, 4));
    assert_eq!((r.code, r.stdout.as_str()), (0, "det = 1\n"));
    let id = write(&dir, "id.json", r#"{"matrix": [[1,0,0],[0,1,0],[0,0,1]], "rhs": [0,0,0]}"#);
    for method in ["fast", "leibniz"] {
        let r = run_path(&["det", "--method", method], &id);
        assert_eq!(r.stdout, "det = 1\n");
    }
    let r = run_path(&["det", "--float"], &chain_file(&dir, 3));
    assert_eq!(r.stdout, "det = 1\n");
}

#[test]
fn minors_are_listed() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"matrix": [[2,1],[4,3]], "rhs": [1,1]}"#);
    let r = run_path(&["minors"], &f);
    assert_eq!(r.stdout, "D_1 = 2\nD_2 = 2\n");
}

#[test]
fn malformed_input_reports_location() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", "{\"matrix\": [[1, 2],\n  [3, ]], \"rhs\": [1, 2]}");
    let r = run_path(&["det"], &f);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("line 2, column"), "{}", r.stderr);

    let f = write(&dir, "frac.json", r#"{"matrix": [[0.5]], "rhs": [1]}"#);
    let r = run_path(&["det"], &f);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("matrix[1][1]"), "{}", r.stderr);

    let f = write(&dir, "ragged.json", r#"{"matrix": [[1, 2], [3]], "rhs": [1, 2]}"#);
    assert_eq!(run_path(&["det"], &f).code, 3);
    let f = write(&dir, "short.json", r#"{"matrix": [[1, 2], [3, 4]], "rhs": [1]}"#);
    assert_eq!(run_path(&["solve"], &f).code, 3);

    assert_eq!(cramer(&["det", "/nonexistent/file.json"]).code, 2);
    assert_eq!(cramer(&["frobnicate"]).code, 2);
}

#[test]
fn partial_solve_of_chain() {
    let dir = TempDir::new().unwrap();
    let r = run_path(&["solve", "--partial", "3"], &chain_file(&dir, 5));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        r.stdout,
        "D_3 = 1\n\
         x1 = 1·x'1 + 1·x'2 + 1·x'3 + 1·x4\n\
         x2 = 1·x'2 + 1·x'3 + 1·x4\n\
         x3 = 1·x'3 + 1·x4\n"
    );
}

#[test]
fn full_solve_with_fractions() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s.json", r#"{"matrix": [[2, 1], [1, 3]], "rhs": ["1/2", 1]}"#);
    let r = run_path(&["solve"], &f);
    assert_eq!(r.stdout, "det(R) = 5\nx1 = 1/10\nx2 = 3/10\n");
    let r = run_path(&["solve", "--json"], &f);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["kind"], "full");
    assert_eq!(v["x"], serde_json::json!(["1/10", "3/10"]));

    let singular = write(&dir, "sing.json", r#"{"matrix": [[1, 1], [1, 1]], "rhs": [1, 2]}"#);
    let r = run_path(&["solve"], &singular);
    assert_eq!(r.code, 4);
    assert!(r.stdout.is_empty());
}

#[test]
fn zero_minor_and_reorder() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "swap.json", r#"{"matrix": [[0, 1], [1, 0]], "rhs": [3, 4]}"#);
    let r = run_path(&["solve", "--partial", "1"], &f);
    assert_eq!(r.code, 5);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("--reorder"), "{}", r.stderr);

    let r = run_path(&["solve", "--partial", "1", "--reorder"], &f);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "row order: 2 1\nD_1 = 1\nx1 = 1·x'2\n");

    let r = run_path(&["solve", "--trace"], &f);
    assert_eq!(r.code, 5);
    assert!(r.stdout.is_empty());
}

#[test]
fn trace_of_chain() {
    let dir = TempDir::new().unwrap();
    let r = run_path(&["solve", "--trace"], &chain_file(&dir, 3));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        r.stdout,
        "step 1: D_1 = 1\n  x1 = 1·x'1 + 1·x2\n\
         step 2: D_2 = 1\n  x1 = 1·x'1 + 1·x'2 + 1·x3\n  x2 = 1·x'2 + 1·x3\n\
         step 3: D_3 = 1\n  x1 = 1·x'1 + 1·x'2 + 1·x'3\n  x2 = 1·x'2 + 1·x'3\n  x3 = 1·x'3\n"
    );
}

#[test]
fn json_round_trip_reproduces_expressions() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "s.json",
        r#"{"matrix": [[0, 2, 1, -3], [1, 1, 0, 2], [4, -1, 5, 0], [2, 0, 1, 1]], "rhs": [1, 2, 3, 4]}"#,
    );
    let text = run_path(&["solve", "--partial", "2", "--reorder"], &f);
    let json = run_path(&["solve", "--partial", "2", "--reorder", "--json"], &f);
    assert_eq!(json.code, 0, "{}", json.stderr);
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    let (sol, labels) = affine_from_json::<Rational>(&v).unwrap();
    let lines = affine_expressions(&sol, &labels);
    let printed: Vec<&str> = text.stdout.lines().skip(2).collect();
    assert_eq!(lines, printed);
    assert_eq!(v["expressions"], serde_json::json!(lines));
}

#[test]
fn chain_model() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"model": "chain", "masses": [1, 2, 3], "acceleration": 2}"#);
    let r = run_path(&["model"], &f);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "det(R) = 1\nT1 = 12\nT2 = 10\nT3 = 6\nclosed-form check: PASS\n");

    let r = run_path(&["model", "--json"], &f);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["closed_form_check"], "PASS");

    let single = write(&dir, "one.json", r#"{"model": "chain", "masses": ["3/2"], "acceleration": 4}"#);
    let r = run_path(&["model"], &single);
    assert!(r.stdout.contains("T1 = 6\n"), "{}", r.stdout);

    let float = write(&dir, "f.json", r#"{"model": "chain", "masses": [0.5, 1.5], "acceleration": 2, "scalar": "float"}"#);
    let r = run_path(&["model"], &float);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("T1 = 4\n"), "{}", r.stdout);

    let empty = write(&dir, "e.json", r#"{"model": "chain", "masses": [], "acceleration": 2}"#);
    let r = run_path(&["model"], &empty);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
}

#[test]
fn identity_checks_pass() {
    let dir = TempDir::new().unwrap();
    let r = run_path(&["check", "--all"], &chain_file(&dir, 4));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "p = 2: PASS\np = 3: PASS\np = 4: PASS\n");

    let id = write(&dir, "id.json", r#"{"matrix": [[1,0,0],[0,1,0],[0,0,1]], "rhs": [0,0,0]}"#);
    assert_eq!(run_path(&["check", "--identity", "3"], &id).stdout, "p = 3: PASS\n");

    let dense = write(
        &dir,
        "dense.json",
        r#"{"matrix": [[3,-1,4,1,-5,9],[2,6,-5,3,5,-8],[9,7,9,-3,2,3],[8,4,-6,2,6,4],[-3,3,8,3,2,7],[9,5,-2,8,8,4]], "rhs": [1,2,3,4,5,6]}"#,
    );
    let r = run_path(&["check", "--all", "--seed", "11", "--points", "5"], &dense);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().filter(|l| l.ends_with("PASS")).count(), 5);

    let zero = write(&dir, "z.json", r#"{"matrix": [[0, 1], [1, 0]], "rhs": [1, 1]}"#);
    let r = run_path(&["check", "--all"], &zero);
    assert_eq!(r.code, 5);
    assert!(r.stdout.is_empty());

    assert_eq!(run_path(&["check", "--identity", "1"], &id).code, 3);
}

#[test]
fn in_process_runner_matches_binary() {
    let dir = TempDir::new().unwrap();
    let path = chain_file(&dir, 4);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cramer_core::cli::run(["cramer", "det", path.to_str().unwrap()], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "det = 1\n");
    assert!(err.is_empty());
}

#[test]
fn bundled_data_files_run() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let r = run_path(&["solve", "--partial", "3"], &data.join("chain5.json"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("x1 = 1·x'1 + 1·x'2 + 1·x'3 + 1·x4\n"));
    let r = run_path(&["solve", "--reorder"], &data.join("swap2.json"));
    assert_eq!(r.stdout, "row order: 2 1\ndet(R) = 1\nx1 = 3\nx2 = 1/2\n");
    let r = run_path(&["model"], &data.join("chain_model.json"));
    assert!(r.stdout.ends_with("closed-form check: PASS\n"));
}
