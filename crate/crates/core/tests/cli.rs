mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::{f, fixture_path, manifest_path, repo_root};
use khm::checker::extension;
use khm::model::load_model;
use serde_json::Value;

const REMARK: &str = "Khm(p', false, p) & Khm(p, o, q) -> Khm(p', o, q)";

fn khm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khm"))
        .args(args)
        .env("KHM_COLOR", "never")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn corpus_file(name: &str) -> String {
    repo_root().join("corpus").join(name).to_str().unwrap().to_string()
}

#[test]
fn parse_prints_the_canonical_form() {
    let out = khm(&["parse", "Kh(p, q) & U(!p)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Kh(p, q) & U(!p)\n");
    assert_eq!(khm(&["parse", "p &"]).status.code(), Some(2));
}

#[test]
fn check_examples() {
    let m1 = fixture_path("m1");
    let out = khm(&["check", path(&m1), "Kh(p, q)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("true"), "{text}");
    assert!(text.contains("witness Kh(p, q): ru"), "{text}");

    let out = khm(&["check", path(&m1), "Kh(p, q)", "--json"]);
    let doc = json(&out);
    assert_eq!(doc["value"], true);
    assert_eq!(doc["witnesses"][0]["plan"], "ru");

    let m3 = fixture_path("m3");
    let out = khm(&["check", path(&m3), "Khm(p, false, q)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no witness Khm(p, false, q)"));

    let out = khm(&["check", path(&m3), "o", "--state", "s2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = khm(&["check", path(&m3), "o", "--state", "s9"]);
    assert_eq!(out.status.code(), Some(2));

    let out = khm(&["check", "/nonexistent/model.json", "p"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn plan_examples() {
    let m3 = fixture_path("m3");
    let out = khm(&["plan", path(&m3), "--pre", "p", "--mid", "o", "--post", "q"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "ab\n".to_string()));
    let out = khm(&["plan", path(&m3), "--pre", "p", "--mid", "false", "--post", "o"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "a\n".to_string()));

    let m4 = fixture_path("m4");
    let out = khm(&["plan", path(&m4), "--pre", "p'", "--mid", "o", "--post", "q"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(1), "no plan\n".to_string()));
    let out = khm(&["plan", path(&m4), "--pre", "p'", "--mid", "o", "--post", "q", "--json"]);
    assert_eq!(json(&out)["plan"], Value::Null);

    let out = khm(&["plan", path(&m3), "--pre", "q", "--mid", "false", "--post", "q", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["plan"], "");
}

#[test]
fn prove_examples() {
    let manifest = manifest_path();
    let out = khm(&["prove", &corpus_file("univ.khd.json"), "--corpus", path(&manifest)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let conclusion = text.strip_prefix("ok UNIV: ").unwrap().trim_end();
    assert_eq!(f(conclusion), f("U(!p) -> Khm(p, false, false)"));

    let out = khm(&["prove", &corpus_file("ulkh.khd.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("line 1: unknown-theorem"), "{}", stdout(&out));
    let out = khm(&["prove", &corpus_file("ulkh.khd.json"), "--corpus", path(&manifest)]);
    assert_eq!(out.status.code(), Some(0));

    let dir = std::env::temp_dir().join(format!("khm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(corpus_file("ulkhm.khd.json")).unwrap()).unwrap();
    doc["lines"][5]["just"] = serde_json::json!({ "kind": "mp", "premise": 5, "implication": 4 });
    let mutated = dir.join("mutated.khd.json");
    std::fs::write(&mutated, doc.to_string()).unwrap();
    let out = khm(&["prove", path(&mutated), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let verdict = json(&out);
    assert_eq!((verdict["ok"].clone(), verdict["line"].clone()), (Value::Bool(false), Value::from(6)));
    assert_eq!(verdict["reason"], "bad-mp-shape");

    let broken = dir.join("broken.khd.json");
    std::fs::write(&broken, "{\"name\": 3").unwrap();
    assert_eq!(khm(&["prove", path(&broken)]).status.code(), Some(2));
    assert_eq!(khm(&["prove", "/nonexistent.khd.json"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn countermodel_for_the_remark_reloads_and_falsifies() {
    let out = khm(&["countermodel", REMARK, "--max-states", "4", "--max-actions", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["status"], "found");
    let model = load_model(doc["model"].to_string().as_bytes()).unwrap();
    let state = doc["state"].as_str().unwrap();
    let ext = extension(&model, &f(REMARK));
    assert!(!ext.contains(model.state_index(state).unwrap()));

    let out = khm(&["countermodel", REMARK, "--max-states", "4", "--max-actions", "3"]);
    assert!(stdout(&out).starts_with("countermodel falsifying at "));
}

#[test]
fn countermodel_negative_answers() {
    let out = khm(&["countermodel", "p -> p", "--max-states", "3", "--max-actions", "2"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(1), "none within bounds\n".to_string()));

    let emp = "U(p -> q) -> Khm(p, false, q)";
    let out = khm(&["countermodel", emp, "--max-states", "3", "--max-actions", "2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "none");

    let out = khm(&["countermodel", "p -> p", "--max-states", "3", "--budget", "5", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "budget-exhausted");
    assert!(!out.stderr.is_empty());

    let out = khm(&["countermodel", "p", "--max-states", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fuzz_is_reproducible() {
    let a = khm(&["fuzz", "--trials", "1", "--seed", "7"]);
    let b = khm(&["fuzz", "--trials", "1", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = khm(&["fuzz", "--trials", "20", "--seed", "3", "--json"]);
    assert_eq!(json(&out)["failures"], Value::Array(vec![]));
    assert_eq!(khm(&["fuzz", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(khm(&["fuzz", "--edge-prob", "1.5"]).status.code(), Some(2));
}

#[test]
fn usage_errors_and_formula_files() {
    assert_eq!(khm(&[]).status.code(), Some(2));
    assert_eq!(khm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(khm(&["--help"]).status.code(), Some(0));

    let out = Command::new(env!("CARGO_BIN_EXE_khm"))
        .args(["parse", "p"])
        .env("KHM_COLOR", "sometimes")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let file = std::env::temp_dir().join(format!("khm-formula-{}.txt", std::process::id()));
    std::fs::write(&file, "Kh(p, q)\n").unwrap();
    let out = khm(&["check", path(&fixture_path("m1")), &format!("@{}", path(&file))]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(&file).unwrap();
}
