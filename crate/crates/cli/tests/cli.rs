use std::collections::HashSet;
use std::process::{Command, Output};

use renner::renner::{load_system, rook_system, RennerSystem};
use serde_json::Value;

const SQUARE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/square.sys");

fn renner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renner")).args(args).env_remove("RENNER_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = renner(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn order_examples() {
    assert_eq!(ok(&["order", "rook:3", "--plus", "3,2,0", "3,2,1"]).trim(), "true");
    assert_eq!(ok(&["order", "rook:3", "--plus", "1,2,3", "1,2,3"]).trim(), "true");
    assert_eq!(ok(&["order", "rook:3", "--plus", "3,2,1", "3,2,0"]).trim(), "false");
}

#[test]
fn order_witness() {
    let out = ok(&["order", "rook:3", "3,2,0", "3,2,1", "--witness"]);
    assert!(out.starts_with("true\nwitness w = "), "{out}");
    let v = json(&["order", "rook:3", "3,2,1", "3,2,0", "--witness", "--format", "json"]);
    assert_eq!(v["leq"], false);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn opposite_lattice_swaps_the_orders() {
    // r ≤⁺ s over Λ exactly when r ≤⁻ s over Λ⁻.
    let sys = rook_system(3).unwrap();
    let all: Vec<String> = sys.enumerate().unwrap().iter().map(|r| sys.format_element(r)).collect();
    for (r, s) in [(&all[5], &all[20]), (&all[30], &all[12]), (&all[7], &all[33])] {
        let plus = ok(&["order", "rook:3", "--plus", r, s]);
        let minus = ok(&["order", "rook:3", "--opposite", "--minus", r, s]);
        assert_eq!(plus, minus, "{r} vs {s}");
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["order", "rook:3", "3,2,0", "9,9,9"][..],
        &["order", "rook:3", "--plus", "--minus", "1,2,3", "1,2,3"],
        &["order", "rook:x", "1,2,3", "1,2,3"],
        &["forms", "/no/such/file", "1"],
        &["group", "Q7"],
        &["classes", "rook:3", "--relation", "D"],
        &["verify", "rook:2", "--suite", "no such suite"],
        &["forms", "rook:3", "1,2,3", "--format", "dot"],
    ] {
        assert_eq!(renner(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn forms_of_the_example_element() {
    let out = ok(&["forms", "rook:3", "3,2,0"]);
    for name in ["left", "right", "hybrid", "vanilla"] {
        let line = out.lines().find(|l| l.starts_with(name)).unwrap();
        assert!(line.ends_with("[ok]"), "{line}");
    }
    let vanilla = out.lines().find(|l| l.starts_with("vanilla")).unwrap();
    for label in ["σ-=", "e-=", "σ0=", "e+=", "σ+="] {
        assert!(vanilla.contains(label), "{vanilla}");
    }
}

#[test]
fn forms_of_units_and_idempotents() {
    let id = "{\"display\":\"[1,2,3]\",\"word\":\"\"}";
    let one: Value = serde_json::from_str(id).unwrap();
    let v = json(&["forms", "rook:3", "2,1,3", "--format", "json"]);
    assert_eq!(v["vanilla"]["sigma_minus"], one);
    assert_eq!(v["vanilla"]["sigma_plus"], one);
    assert_eq!(v["vanilla"]["sigma_zero"]["display"], "[2,1,3]");
    assert_eq!(v["vanilla"]["e_plus"], "e3");
    let v = json(&["forms", "rook:3", "1,2,0", "--format", "json"]);
    for (form, keys) in [("left", &["x", "y"][..]), ("right", &["y", "x"]), ("hybrid", &["x", "y", "z"])] {
        for k in keys {
            assert_eq!(v[form][*k], one, "{form}.{k}");
        }
    }
    assert!(v["check"].as_object().unwrap().values().all(|b| b == true));
}

#[test]
fn extrema_json() {
    let v = json(&["extrema", "rook:3", "3,2,0", "--relation", "H", "--format", "json"]);
    assert_eq!(v[0]["min"], "2,3,0");
    assert_eq!(v[0]["max"], "3,2,0");
    let all = json(&["extrema", "rook:3", "3,2,0", "--minus", "--format", "json"]);
    assert_eq!(all.as_array().unwrap().len(), 4);
    assert!(all.as_array().unwrap().iter().all(|x| x["epsilon"] == "-"));
}

fn labels(v: &Value) -> Vec<String> {
    v["classes"].as_array().unwrap().iter().flat_map(|c| c.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string())).collect()
}

fn round_trips(sys: &RennerSystem, printed: &[String]) {
    let all = sys.enumerate().unwrap();
    assert_eq!(printed.len(), all.len());
    let parsed: HashSet<_> = printed.iter().map(|t| sys.parse_element(t).unwrap()).collect();
    assert_eq!(parsed.len(), all.len());
    for t in printed {
        assert_eq!(&sys.format_element(&sys.parse_element(t).unwrap()), t);
    }
}

#[test]
fn printed_elements_round_trip() {
    let counts = [("J", 4), ("L", 8), ("R", 8), ("H", 20)];
    for (rel, n) in counts {
        let v = json(&["classes", "rook:3", "--relation", rel, "--format", "json"]);
        assert_eq!(v["classes"].as_array().unwrap().len(), n, "{rel}");
        round_trips(&rook_system(3).unwrap(), &labels(&v));
    }
    let v = json(&["classes", SQUARE, "--relation", "H", "--format", "json"]);
    round_trips(&load_system(SQUARE).unwrap(), &labels(&v));
}

#[test]
fn hasse_of_r2() {
    let dot = ok(&["hasse", "rook:2", "--plus"]);
    assert!(dot.starts_with("digraph"));
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    assert_eq!(nodes, 7);
    let edges: Vec<(usize, usize)> = dot
        .lines()
        .filter_map(|l| l.trim().strip_suffix(';')?.split_once(" -> "))
        .map(|(a, b)| (a[1..].parse().unwrap(), b[1..].parse().unwrap()))
        .collect();
    // Acyclic: repeatedly strip nodes without incoming edges.
    let mut alive: HashSet<usize> = (0..nodes).collect();
    while let Some(&n) = alive.iter().find(|&&n| !edges.iter().any(|&(a, b)| b == n && alive.contains(&a))) {
        alive.remove(&n);
    }
    assert!(alive.is_empty(), "cycle among {alive:?}");
    let v = json(&["hasse", "rook:3", "--submonoid", "O", "--format", "json"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 20);
    let v = json(&["hasse", "rook:3", "--class", "3,2,0", "--relation", "H", "--format", "json"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(v["covers"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = ok(&["verify", "rook:3"]);
    assert!(a.trim_end().ends_with("18/18 suites pass"), "{a}");
    assert_eq!(a, ok(&["verify", "rook:3"]));
    ok(&["verify", SQUARE]);
    ok(&["verify", SQUARE, "--opposite"]);
}

#[test]
fn counterexample() {
    let out = ok(&["counterexample"]);
    assert!(out.trim_end().ends_with("4/4 claims pass"), "{out}");
    let o = renner(&["counterexample", "--minus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("3/4 claims pass"));
    let v = json(&["counterexample", "--format", "json"]);
    assert_eq!(v["claims"].as_array().unwrap().len(), 4);
}

#[test]
fn budget() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_renner"));
        c.args(args).env_remove("RENNER_BUDGET");
        if let Some(b) = env {
            c.env("RENNER_BUDGET", b);
        }
        c.output().unwrap().status.code()
    };
    assert_eq!(run(Some("10"), &["classes", "rook:3"]), Some(2));
    assert_eq!(run(None, &["classes", "rook:3", "--budget", "10"]), Some(2));
    assert_eq!(run(Some("10"), &["classes", "rook:3", "--budget", "34"]), Some(0));
    assert_eq!(run(Some("34"), &["classes", "rook:3"]), Some(0));
}

#[test]
fn group_and_rook_summaries() {
    let v = json(&["group", "A3", "--elements", "--format", "json"]);
    assert_eq!(v["order"], "24");
    assert_eq!(v["w0_length"], 6);
    assert_eq!(v["elements"].as_array().unwrap().len(), 24);
    assert_eq!(json(&["group", "B3", "--format", "json"])["order"], "48");
    assert_eq!(json(&["group", "I2(5)", "--format", "json"])["order"], "10");
    let v = json(&["rook", "3", "--elements", "--format", "json"]);
    assert_eq!(v["size"], 34);
    assert_eq!(v["idempotents"].as_array().unwrap().len(), 4);
    let list: Vec<String> = v["elements"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().into()).collect();
    round_trips(&rook_system(3).unwrap(), &list);
}
