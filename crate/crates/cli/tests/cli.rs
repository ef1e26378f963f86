use std::process::{Command, Output};

use serde_json::Value;

fn sl2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2")).args(args).output().expect("run sl2")
}

fn stdout(args: &[&str]) -> String {
    let out = sl2(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--format=json");
    serde_json::from_str(&stdout(&all)).expect("one JSON document")
}

#[test]
fn nh_d_on_a_crossing() {
    assert_eq!(stdout(&["nh", "d", "--w=1", "--n=2"]), "1 - 2 x1 ∂1\n");
    assert_eq!(stdout(&["nh", "d", "--w=1,2", "--n=3"]), "3 ∂2 + ∂1 - 4 x1 ∂1∂2\n");
    assert_eq!(stdout(&["nh", "d", "--w=(2,1)"]), "1 - 2 x1 ∂1\n");
}

#[test]
fn hecke_character() {
    assert_eq!(stdout(&["char", "hecke", "--expr=1", "--bits=0"]), "x1\n");
    let v = json(&["char", "hecke", "--expr=1", "--bits=0"]);
    assert_eq!(v["sigma"], "1");
}

#[test]
fn rank_one_core_json() {
    let v = json(&["core", "rankone", "--a=-2,-1"]);
    assert_eq!(v["rank"], 6);
    assert_eq!(v["generator_degree"], "-3");
    assert_eq!(v["character"], serde_json::json!([[-3, 1], [-1, 2], [1, 2], [3, 1]]));
    let elements: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|b| b["element"].as_str().unwrap()).collect();
    for m in ["1", "x1", "x2", "x1^2", "x1 x2", "x1^2 x2"] {
        assert!(elements.contains(&m), "{m} missing from {elements:?}");
    }
    let v = json(&["core", "rankone", "--a=1,-1"]);
    assert_eq!(v["rank"], 0);
    let v = json(&["core", "rankone", "--a=-1", "--sym=2", "--check"]);
    assert_eq!(v["brute_force_agrees"], true);
}

#[test]
fn nilhecke_core() {
    let v = json(&["core", "nh", "--n=2"]);
    assert_eq!(v["size"], 4);
    assert_eq!(v["character_matches"], true);
    assert_eq!(v["matrix_units"].as_array().unwrap().len(), 4);
}

#[test]
fn symmetric_divided_power() {
    let v = json(&["sym", "--basis=e", "--lambda=5", "--op=z", "--power=2"]);
    assert_eq!(v["integral"], false);
    let v = json(&["sym", "--basis=e", "--lambda=5", "--op=z", "--power=2", "--y=-1"]);
    assert_eq!(v["integral"], true);
    assert_eq!(v["display"], "10 e3");
    assert_eq!(stdout(&["sym", "--basis=p", "--lambda=2", "--op=d", "--n=3"]), "d(p2) = 2 p3\n");
}

#[test]
fn hecke_orders() {
    assert_eq!(stdout(&["hecke", "compare", "--expr=1,2", "--a=10", "--b=01"]), "10 and 01 are incomparable\n");
    assert_eq!(stdout(&["hecke", "enum", "--expr=1,2,1", "--w=(1,2,3)"]), "000 < 101\n");
}

#[test]
fn klr_colored_permutations() {
    let v = json(&["klr", "perms", "--source=1,2,1", "--graph=A2"]);
    assert_eq!(v["permutations"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_downfree_sweeps_s4() {
    let text = stdout(&["verify", "downfree", "--n=4"]);
    assert!(text.contains("24 permutations checked"), "{text}");
    let v = json(&["verify", "downfree", "--n=4"]);
    assert_eq!(v["status"], "pass");
    for c in v["checks"].as_array().unwrap() {
        assert!(!c["anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "sl2-axioms", "--n=3", "--seed=1", "--format=json"];
    let (a, b) = (sl2(&args), sl2(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["elapsed_ms"], 0);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
}

#[test]
fn verify_all_quick() {
    let v = json(&["verify", "all", "--quick"]);
    assert_eq!(v["status"], "pass");
}

#[test]
fn verify_single_check() {
    let v = json(&["verify", "cores", "--check=rankone.n3-example"]);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["status"], "pass");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "nope"][..],
        &["nh", "d", "--w=5", "--n=2"],
        &["core", "rankone", "--a=x"],
        &["char", "hecke", "--expr=1", "--bits=01"],
        &["verify", "cores", "--check=hecke.lexico"],
        &["frobnicate"],
    ] {
        let out = sl2(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
