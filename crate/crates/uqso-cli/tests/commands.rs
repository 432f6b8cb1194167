use std::process::{Command, Output};

use serde_json::Value;

fn uqso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqso")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = uqso(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn root_count_matches_product_formula() {
    for (n, want) in [("1", "2"), ("2", "8"), ("3", "48")] {
        let o = uqso(&["roots", "count", "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
    assert_eq!(json(&["roots", "list", "--n", "2"]).as_array().unwrap().len(), 8);
}

#[test]
fn pair_check_reports_gra3_witness() {
    let v = json(&["schemes", "pair-check", "--n", "2", "--pos", "1,2,", "--neg", "3,4,"]);
    assert_eq!(v["passes"], true);
    assert_eq!(v["gra3_witness"], "ST*");
    assert_eq!(v["overlays"].as_object().unwrap().len(), 4);
}

#[test]
fn pair_check_refuses_irregular_input() {
    // (1,3) with S = {1} is neither white nor black regular at n = 2
    let o = uqso(&["schemes", "pair-check", "--n", "2", "--pos", "1,3,1", "--neg", "1,1,"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sigma_table_has_q_to_the_fourth() {
    let rows = json(&["gen", "tables", "--kind", "sigma", "--n", "2"]);
    let row = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["k"] == 1 && r["m"] == 4)
        .expect("row (1,4)");
    // default q = 2
    assert_eq!(row["closed"], "16/1");
    assert_eq!(row["closed"], row["direct"]);
    let mu = json(&["gen", "tables", "--kind", "mu", "--n", "2", "--q", "-3"]);
    assert!(mu.as_array().unwrap().iter().all(|r| r["closed"] == r["direct"]));
}

#[test]
fn regular_census_for_one_three() {
    let v = json(&["schemes", "regular", "--n", "2", "--k", "1", "--m", "3"]);
    assert_eq!(v["white"], serde_json::json!([[]]));
    assert_eq!(v["black"], serde_json::json!([[1, 2]]));
}

#[test]
fn shorthand_and_json_inputs_agree() {
    let a = json(&["alg", "nf", "[x 1, x 2]"]);
    let b = json(&["gen", "u", "--k", "1", "--m", "2"]);
    assert_eq!(a, b);
    let text = serde_json::to_string(&b).unwrap();
    let c = json(&["alg", "nf", &text]);
    assert_eq!(c, b);
}

#[test]
fn serre_relation_vanishes() {
    let o = uqso(&["alg", "nf", "[x 2, [x 2, [x 2, x 1]]]"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn mixed_bracket_gives_group_part() {
    // [x_1, x_1⁻] = 1 − g_1 f_1
    let v = json(&["alg", "bracket", "x 1", "x 1-"]);
    let terms = v.as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["neg"].as_array().unwrap().is_empty() && t["pos"].as_array().unwrap().is_empty()));
}

#[test]
fn coproduct_of_a_letter() {
    let o = uqso(&["alg", "coproduct", "x 1"]);
    assert_eq!(stdout(&o).trim(), "(1) x1 ⊗ 1 + (1) g1 ⊗ x1");
}

#[test]
fn star_and_dual_round_trip() {
    let s = json(&["schemes", "star", "--n", "2", "--k", "1", "--m", "3", "--set", "1"]);
    let k = s["k"].to_string();
    let m = s["m"].to_string();
    let set: Vec<String> = s["set"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let back = json(&["schemes", "star", "--n", "2", "--k", &k, "--m", &m, "--set", &set.join(",")]);
    assert_eq!(back["k"], 1);
    assert_eq!(back["m"], 3);
    assert_eq!(back["set"], serde_json::json!([1]));
    let d = json(&["schemes", "dual", "--n", "2", "--k", "1", "--m", "3", "--set", "1"]);
    assert_eq!(d["set"], serde_json::json!([2]));
}

#[test]
fn sigma_membership_sets_exit_code() {
    let yes = uqso(&["roots", "sigma", "--n", "2", "--k", "1", "--m", "3", "--member", "0,2"]);
    assert_eq!(yes.status.code(), Some(0));
    let no = uqso(&["roots", "sigma", "--n", "2", "--k", "1", "--m", "3", "--member", "1,0"]);
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn verify_writes_a_passing_report() {
    let path = std::env::temp_dir().join(format!("uqso-report-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = uqso(&["verify", "--suite", "counts", "--n", "2", "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    let reports = report.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["pass"] == true && r["out_of_scope"].as_array().unwrap().len() == 2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(uqso(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(uqso(&["alg", "nf", "x 9"]).status.code(), Some(2));
    assert_eq!(uqso(&["alg", "nf", "x 1 +"]).status.code(), Some(2));
    assert_eq!(uqso(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(uqso(&["params", "--q", "0"]).status.code(), Some(2));
}

#[test]
fn explicit_params_are_used() {
    let spec = json(&["params", "--n", "2", "--q", "3/2", "--seed", "7"]);
    let inline = serde_json::to_string(&spec).unwrap();
    assert_eq!(json(&["params", "--params", &inline]), spec);
}
