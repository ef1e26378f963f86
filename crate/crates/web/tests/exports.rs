use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn rank_one_core_n3() {
    let v = parse(sl2web::rank_one_core("-2,-1,0"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["rank"], 6);
    let arrows = v["arrows"].as_array().unwrap();
    let one = arrows.iter().find(|a| a["element"] == "1").unwrap();
    assert_eq!(one["d"], "-2 x1 - x2");
    assert_eq!(one["z"], "0");
}

#[test]
fn rank_one_core_rejects_bad_input() {
    let v = parse(sl2web::rank_one_core("a"));
    assert_eq!(v["ok"], false);
    assert!(v["error"].as_str().unwrap().contains("integer"));
    assert_eq!(parse(sl2web::rank_one_core("-9"))["ok"], false);
    assert_eq!(parse(sl2web::rank_one_core("1"))["rank"], 0);
}

#[test]
fn nh_d_crossing() {
    let v = parse(sl2web::nh_d("1", 2));
    assert_eq!(v["d"], "1 - 2 x1 ∂1");
    assert_eq!(v["p_left"], "-2 x1");
    assert_eq!(parse(sl2web::nh_d("3", 2))["ok"], false);
}

#[test]
fn hecke_stroll_table() {
    let v = parse(sl2web::hecke_stroll("1,2,1", "101"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["terminus"], "(1,2,3)");
    assert_eq!(v["p_LL"], "x1");
    assert_eq!(v["coterminal"], serde_json::json!(["000", "101"]));
    let decorations: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["decoration"].as_str().unwrap()).collect();
    assert_eq!(decorations, ["U1", "U0", "D1"]);
    assert_eq!(parse(sl2web::hecke_stroll("1,2", "1"))["ok"], false);
}
