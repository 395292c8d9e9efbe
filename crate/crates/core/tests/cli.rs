use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_dmn-verify");

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dmn-verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_loan_grade_reports_findings() {
    let t1 = fixture("loan_grade.json");
    let o = run(&["check", t1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().ends_with("incorrect"));
    assert!(text.contains("OVERLAP"));
    assert!(text.contains("MISSING_RULE"));
    assert!(text.contains("COMPLETENESS_MISMATCH"));
}

#[test]
fn check_scopes() {
    let t1 = fixture("loan_grade.json");
    let overlap = stdout(&run(&["check", t1.to_str().unwrap(), "--only", "overlap"]));
    assert!(overlap.contains("OVERLAP") && !overlap.contains("MISSING_RULE"));
    let missing = stdout(&run(&["check", t1.to_str().unwrap(), "--only", "missing"]));
    assert!(!missing.contains("OVERLAP") && missing.contains("MISSING_RULE"));
}

#[test]
fn structured_output_is_stable_json() {
    let t1 = fixture("loan_grade.json");
    let a = run(&["check", t1.to_str().unwrap(), "--format", "structured"]);
    let b = run(&["check", t1.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["correct"], false);
    assert!(json["diagnostics"].as_array().unwrap().len() > 2);
}

#[test]
fn full_cover_is_correct() {
    let f = fixture("full_cover.json");
    let o = run(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("correct"));
}

#[test]
fn eval_outcomes() {
    let t1 = fixture("loan_grade.json");
    let t1 = t1.to_str().unwrap();
    let o = run(&["eval", t1, "--input", "Annual Income=500,Loan Size=4230"]);
    assert_eq!(
        (o.status.code(), stdout(&o).trim()),
        (Some(0), "Matched rule B: Grade=G")
    );
    let o = run(&["eval", t1, "--input", "Annual Income=200,Loan Size=2000"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "No rule matched"));
    let o = run(&["eval", t1, "--input", "Annual Income=600,Loan Size=600"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rules A, C"));
    let o = run(&["eval", t1, "--input", "Salary=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["check", "/nonexistent/table.json"]).status.code(), Some(2));
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"name":"x","inputs":[{"name":"a","type":"integer"}],"outputs":[],"rules":[{"id":"r","in":["[1..]"],"out":[]}]}"#).unwrap();
    assert_eq!(run(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn generate_then_check() {
    let out = scratch("generated.json");
    let o = run(&[
        "generate",
        "--columns",
        "3",
        "--rules",
        "40",
        "--seed",
        "9",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["check", out.to_str().unwrap()]).status.code(), Some(0));

    let noisy = scratch("noisy.toml");
    let o = run(&[
        "generate",
        "--columns",
        "3",
        "--rules",
        "40",
        "--seed",
        "9",
        "--inject",
        "both",
        "--fraction",
        "0.5",
        "-o",
        noisy.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&noisy).unwrap().contains("hitPolicy"));
    let text = stdout(&run(&["check", noisy.to_str().unwrap()]));
    assert!(text.contains("OVERLAP") && text.contains("MISSING_RULE"));
}

#[test]
fn bench_writes_a_report() {
    let report = scratch("report.json");
    let suite = fixture("small_suite.json");
    let o = run(&[
        "bench",
        "--suite",
        suite.to_str().unwrap(),
        "-o",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("overlap ms"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let cells = json.as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert_eq!(
        (cells[0]["columns"].as_u64(), cells[1]["rules"].as_u64()),
        (Some(3), Some(80))
    );
}
