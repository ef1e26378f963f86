use sl2core::verify::{run_suite, VerifyOptions};

#[test]
fn all_suites_pass_quick() {
    let opts = VerifyOptions { quick: true, ..Default::default() };
    let r = run_suite("all", &opts).unwrap();
    print!("{}", r.to_text());
    assert!(r.passed());
}
