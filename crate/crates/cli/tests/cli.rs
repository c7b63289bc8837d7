use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitstrata")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("one JSON document")
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["degrees", "H4"]).trim(), "2,12,20,30");
    assert_eq!(stdout(&["stratum-dim", "D5", "1,1,1,1,0"]).trim(), "2");
    assert_eq!(stdout(&["stratum-dim", "B5", "1,1,1,1,0"]).trim(), "1");
    assert_eq!(stdout(&["secparnum", "H4", "2"]).trim(), "3");

    let t = json(&["table1", "F4"]);
    let rows: Vec<(u64, u64, u64, String, u64)> = t["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["d_min"].as_u64().unwrap(),
                r["d_max"].as_u64().unwrap(),
                r["parnum"].as_u64().unwrap(),
                r["w"].as_str().unwrap().to_string(),
                r["w_top_degree"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows, vec![(1, 7, 1, "B2".into(), 4), (8, 11, 2, "B3".into(), 6), (12, 23, 3, "F4".into(), 12)]);
    let sec: Vec<u64> = t["sec"].as_array().unwrap().iter().map(|r| r["secparnum"].as_u64().unwrap()).collect();
    assert_eq!(sec, vec![1, 3, 3]);
}

#[test]
fn exact_values_in_json() {
    let v = json(&["stratum-dim", "H3", "1,(1+sqrt5)/2,1/3"]);
    assert_eq!(v["point"][0], "1");
    assert_eq!(v["point"][1]["a"], "1/2");
    assert_eq!(v["point"][1]["b"], "1/2");
    assert_eq!(v["point"][2], "1/3");
    let r = json(&["jacobian-rank", "D5", "1,1,1,1,0", "1", "--variant", "paper-d"]);
    assert_eq!(r["rank"], 1);
    assert_eq!(r["stratum_dim"], 2);
}

#[test]
fn solve_rounds_and_is_deterministic() {
    let args = ["--format", "json", "solve", "--group", "A2", "--objective", "y3", "--k", "3", "--constraint", "principal:0,1"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["solution"]["status"], "solved");
    // -1/sqrt(6) to 12 significant digits
    assert_eq!(v["solution"]["value"].as_f64().unwrap(), -0.408248290464);
}

#[test]
fn exit_codes() {
    let infeasible = run(&["solve", "--group", "B2", "--objective", "y1", "--k", "1", "--constraint", "principal:-1"]);
    assert_eq!(infeasible.status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["degrees", "Q7"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "--group", "B2", "--objective", "y1 +", "--k", "1", "--constraint", "sphere:1"]).status.code(), Some(64));
    // unconstrained without the coercive flag is a precondition failure
    assert_eq!(run(&["solve", "--group", "B2", "--objective", "y1", "--k", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn lie_solve_maps_back_to_matrices() {
    let v = json(&["lie-solve", "--kind", "so", "--n", "4", "--objective", "pf", "--constraint", "sphere:2", "--sense", "max"]);
    assert_eq!(v["weyl_group"], "D2");
    assert_eq!(v["solution"]["value"].as_f64().unwrap(), 1.0);
    let m = v["matrix"]["entries"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    assert_eq!(v["coordinates"], serde_json::json!(["t2", "pf"]));
    let t2 = v["invariant_values"][0].as_f64().unwrap();
    assert!((t2 + 4.0).abs() < 1e-9);
}

#[test]
fn selftest_subset() {
    let out = stdout(&["selftest", "--only", "1,3,9"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 3, "{out}");
}
