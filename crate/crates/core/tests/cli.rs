use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mutspace::examples::{
    seeded_fault_spec, seeded_fault_tests, SAMPLE_KILL_TABLE_CSV, SEEDED_FAULT_SOURCE,
};
use mutspace::mutlang::{MutantDescriptor, Operator};
use serde_json::Value;
use tempfile::TempDir;

fn mutspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mutspace"))
        .args(args)
        .env_remove("MUTSPACE_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: tempfile::tempdir().unwrap(),
        };
        f.write("fault.mut", SEEDED_FAULT_SOURCE);
        f.write(
            "tests.json",
            &serde_json::to_string(&seeded_fault_tests()).unwrap(),
        );
        f.write(
            "spec.json",
            &serde_json::to_string(&seeded_fault_spec()).unwrap(),
        );
        f.write("table.csv", SAMPLE_KILL_TABLE_CSV);
        f
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn p(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_owned()
    }

    fn write(&self, name: &str, text: &str) -> String {
        fs::write(self.path(name), text).unwrap();
        self.p(name)
    }
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

/// Mutation sites counted straight from the source text: every operator
/// token, integer literal and deletable statement, weighted by how many
/// replacements its operator offers.
fn textual_site_count(src: &str) -> usize {
    let b = src.as_bytes();
    let mut count = 0;
    let mut i = 0;
    while i < b.len() {
        let two = b.get(i..i + 2).unwrap_or(&[]);
        if matches!(two, b"<=" | b">=" | b"==" | b"!=") {
            count += 5;
            i += 2;
            continue;
        }
        if matches!(two, b"&&" | b"||") {
            count += 1;
            i += 2;
            continue;
        }
        match b[i] {
            b'+' | b'-' | b'*' | b'/' | b'%' => count += 4,
            b'<' | b'>' => count += 5,
            b'=' => count += 1, // an assignment: one deletion
            b'0'..=b'9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &src[start..i];
                count += if lit == "0" || lit == "1" { 2 } else { 3 };
                continue;
            }
            _ => {}
        }
        if src[i..].starts_with("if (") || src[i..].starts_with("while (") {
            count += 1;
        }
        i += 1;
    }
    count
}

#[test]
fn mutate_lists_every_site() {
    let f = Fixture::new();
    let out = json(&mutspace(&["mutate", &f.p("fault.mut")]));
    let ds: Vec<MutantDescriptor> = serde_json::from_value(out).unwrap();
    assert_eq!(ds.len(), textual_site_count(SEEDED_FAULT_SOURCE));
    for d in &ds {
        assert_eq!(
            d.apply_to_source(SEEDED_FAULT_SOURCE).unwrap().len(),
            SEEDED_FAULT_SOURCE.len() - d.original.len() + d.replacement.len()
        );
    }
}

#[test]
fn mutate_respects_operator_filter_and_writes_sources() {
    let f = Fixture::new();
    let out_dir = f.p("mutants");
    let o = mutspace(&[
        "mutate",
        &f.p("fault.mut"),
        "--operators",
        "AOR",
        "--out",
        &out_dir,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let ds: Vec<MutantDescriptor> = serde_json::from_str(
        &fs::read_to_string(Path::new(&out_dir).join("mutants.json")).unwrap(),
    )
    .unwrap();
    assert!(!ds.is_empty());
    assert!(ds.iter().all(|d| d.operator == Operator::Aor));
    for d in &ds {
        let text = fs::read_to_string(Path::new(&out_dir).join(format!("{}.mut", d.id))).unwrap();
        assert_eq!(text, d.apply_to_source(SEEDED_FAULT_SOURCE).unwrap());
    }
}

#[test]
fn bad_source_exits_2_with_location() {
    let f = Fixture::new();
    let src = f.write("bad.mut", "x = 1;\nif (x > 0) {\n  x = 2;\n");
    let o = mutspace(&["mutate", &src]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:12"), "{}", stderr(&o));
}

#[test]
fn run_is_deterministic_and_honors_the_budget_variable() {
    let f = Fixture::new();
    let args = [
        "run",
        &f.p("fault.mut"),
        "--tests",
        &f.p("tests.json"),
        "--operators",
        "ROR",
        "--trace",
    ];
    let a = mutspace(&args);
    let b = mutspace(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let m: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(m["programs"][0]["role"], "original");
    assert_eq!(m["tests"].as_array().unwrap().len(), 8);

    let o = Command::new(env!("CARGO_BIN_EXE_mutspace"))
        .args(args)
        .env("MUTSPACE_BUDGET", "3")
        .output()
        .unwrap();
    let m: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(m["cells"]["po"]["t1"]["status"], "timeout");
}

#[test]
fn run_then_analyze_and_mbfl_from_files() {
    let f = Fixture::new();
    let o = mutspace(&[
        "run",
        &f.p("fault.mut"),
        "--tests",
        &f.p("tests.json"),
        "--spec",
        &f.p("spec.json"),
        "--out",
        &f.p("matrix.json"),
        "--mutants-out",
        &f.p("mutants.json"),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let adequacy = json(&mutspace(&["analyze", "adequacy", &f.p("matrix.json")]));
    assert!(adequacy["live"].is_array());
    let report = json(&mutspace(&[
        "mbfl",
        &f.p("matrix.json"),
        "--mutants",
        &f.p("mutants.json"),
        "--method",
        "fix",
    ]));
    assert_eq!(report["method"], "fix");
    assert_eq!(report["ranking"][0]["statement"], "16");
    assert_eq!(report["ranking"][0]["rank"], 1.0);
}

#[test]
fn analyze_sample_kill_table() {
    let f = Fixture::new();
    let csv = f.p("table.csv");
    let adequacy = json(&mutspace(&["analyze", "adequacy", &csv]));
    assert_eq!(adequacy["adequate"], true);
    let min = json(&mutspace(&["analyze", "minimize", &csv]));
    assert_eq!(min["minimal"], serde_json::json!(["m1", "m2"]));
    assert_eq!(min["reductionRatio"], 0.5);
    let pairs = json(&mutspace(&["analyze", "pairs", &csv]));
    assert_eq!(pairs.as_array().unwrap().len(), 4);
    let dv = json(&mutspace(&[
        "analyze", "dvector", &csv, "--left", "po", "--right", "m2",
    ]));
    assert_eq!(
        (dv["bits"].as_str(), dv["norm"].as_u64()),
        (Some("011"), Some(2))
    );
    let kill = mutspace(&["analyze", "kill", &csv, "--format", "csv"]);
    assert_eq!(stdout(&kill), SAMPLE_KILL_TABLE_CSV);
    let dmsg = mutspace(&["analyze", "dmsg", &csv]);
    assert!(stdout(&dmsg).starts_with("digraph dmsg {"));
}

#[test]
fn pdl_dot_and_capacity() {
    let o = mutspace(&["analyze", "pdl", "--n", "3", "--dot"]);
    let dot = stdout(&o);
    let nodes = dot
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains("->"))
        .count();
    assert_eq!(nodes, 8, "{dot}");
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 12);
    let o = mutspace(&["analyze", "pdl", "--n", "17"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn schema_violations_exit_2_with_a_pointer() {
    let f = Fixture::new();
    let bad = f.write(
        "bad.json",
        r#"{"tests":["t1"],"programs":[{"id":"po","role":"boss"}],"cells":{}}"#,
    );
    let o = mutspace(&["analyze", "adequacy", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/programs/0/role"), "{}", stderr(&o));
}

#[test]
fn unknown_policy_is_rejected_before_reading_input() {
    let o = mutspace(&[
        "analyze",
        "adequacy",
        "/nonexistent.json",
        "--policy",
        "fuzzy",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fuzzy"), "{}", stderr(&o));
}

#[test]
fn mbfl_without_spec_exits_3() {
    let f = Fixture::new();
    let o = mutspace(&[
        "mbfl",
        "--source",
        &f.p("fault.mut"),
        "--tests",
        &f.p("tests.json"),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("spec"), "{}", stderr(&o));
}

#[test]
fn mbfl_flt_jaccard() {
    let f = Fixture::new();
    let report = json(&mutspace(&[
        "mbfl",
        "--source",
        &f.p("fault.mut"),
        "--tests",
        &f.p("tests.json"),
        "--spec",
        &f.p("spec.json"),
        "--method",
        "flt",
        "--metric",
        "jaccard",
    ]));
    assert_eq!(report["method"], "flt-jaccard");
    for m in report["mutants"].as_array().unwrap() {
        let s = m["score"].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&s));
    }
}

#[test]
fn demo_writes_the_worked_examples() {
    let f = Fixture::new();
    let out = f.p("demo");
    let o = mutspace(&["demo", "--out", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let re: Value =
        serde_json::from_str(&fs::read_to_string(f.path("demo/running_example.json")).unwrap())
            .unwrap();
    assert_eq!(re["d(ps,po)"]["bits"], "⟨0,1,1,1⟩");
    let t1: Value =
        serde_json::from_str(&fs::read_to_string(f.path("demo/sample_kill_table.json")).unwrap())
            .unwrap();
    assert_eq!(t1["minimize"]["minimal"], serde_json::json!(["m1", "m2"]));
    assert!(fs::read_to_string(f.path("demo/pdl.dot"))
        .unwrap()
        .contains("m4"));
    // Byte-stable across runs.
    assert_eq!(mutspace(&["demo"]).stdout, mutspace(&["demo"]).stdout);
}

#[test]
fn randomized_checks_pass_and_are_seeded() {
    let a = mutspace(&["check", "equivalence", "--seed", "7", "--trials", "200"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(
        a.stdout,
        mutspace(&["check", "equivalence", "--seed", "7", "--trials", "200"]).stdout
    );
    let b = mutspace(&[
        "check",
        "bound",
        "--trials",
        "200",
        "--max-tests",
        "4",
        "--max-mutants",
        "16",
    ]);
    assert_eq!(b.status.code(), Some(0), "{}", stdout(&b));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mutspace(&["analyze"]).status.code(), Some(2));
    assert_eq!(mutspace(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mutspace(&["--help"]).status.code(), Some(0));
}
