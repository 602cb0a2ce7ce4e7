use std::process::Command;

use zdaut::cli::{run, Outcome};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn zdaut(args: &[&str]) -> Outcome {
    run(std::iter::once("zdaut").chain(args.iter().copied()))
}

fn line<'a>(out: &'a Outcome, key: &str) -> &'a str {
    out.stdout
        .lines()
        .find(|l| l.starts_with(key))
        .unwrap_or_else(|| panic!("no `{key}` line in\n{}", out.stdout))
}

#[test]
fn validate_bool() {
    let out = zdaut(&["validate", "bool"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 8);
    assert!(out.stdout.lines().all(|l| l.ends_with(" OK")));
}

#[test]
fn validate_table_files() {
    let out = zdaut(&["validate", &data("bool.txt")]);
    assert_eq!(out.code, 0, "{}", out.stderr);

    let out = zdaut(&["validate", &data("z2.txt")]);
    assert_eq!(out.code, 1);
    assert_eq!(line(&out, "antinegativity"), "antinegativity FAIL (1,1)");

    let out = zdaut(&["validate", &data("truncated.txt")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 9"), "{}", out.stderr);
}

#[test]
fn bad_descriptor_is_an_input_error() {
    assert_eq!(zdaut(&["info", "chain1"]).code, 2);
    assert_eq!(zdaut(&["aut", "bool", "-n", "0"]).code, 2);
}

#[test]
fn aut_reports() {
    let out = zdaut(&["aut", "bool", "-n", "2"]);
    assert_eq!(out.code, 0);
    assert_eq!(line(&out, "twin_sizes"), "twin_sizes 1x9 7x1");
    assert_eq!(line(&out, "regular_order"), "regular_order 5040");
    assert_eq!(line(&out, "order"), "order 10080");
    assert_eq!(line(&out, "generators"), "generators 7");

    assert_eq!(line(&zdaut(&["aut", "bool x bool"]), "order"), "order 2");
    assert_eq!(line(&zdaut(&["aut", "chain3"]), "order"), "order 2");
}

#[test]
fn aut_rejects_non_antirings() {
    let out = zdaut(&["aut", &data("z2.txt")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("antinegativity"));
}

#[test]
fn vertex_cap_refusal() {
    let out = zdaut(&["aut", "chain3", "-n", "4"]);
    assert_eq!(out.code, 3, "{}", out.stderr);
    let out = zdaut(&["twins", "bool", "-n", "2", "--vertex-cap", "10"]);
    assert_eq!(out.code, 3);
}

#[test]
fn twins_and_decompose() {
    assert_eq!(zdaut(&["twins", "chain3"]).stdout, "{0} {a,1}\n");
    let out = zdaut(&["decompose", "bool x bool"]);
    assert_eq!(out.stdout, "alpha=(1,1) parts=(0,1)+(1,0) length=2\n");
    assert_eq!(zdaut(&["decompose", "chain3"]).stdout, "alpha=a parts=a length=1\n");
}

#[test]
fn twins_dot_shows_class_sizes() {
    let out = zdaut(&["twins", "chain3", "--dot"]);
    assert!(out.stdout.contains("label=\"{a,1} /2\""), "{}", out.stdout);
}

#[test]
fn digraph_dot() {
    let out = zdaut(&["digraph", "bool"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("digraph zdg {"));
    assert_eq!(out.stdout.matches("->").count(), 3);
}

#[test]
fn verify_reports() {
    for args in [&["verify", "bool", "-n", "2"][..], &["verify", "chain3"][..]] {
        let out = zdaut(args);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.lines().all(|l| l.contains(" PASS")), "{}", out.stdout);
        assert!(out.stdout.contains("alpha_invariance PASS"));
    }
    let out = zdaut(&["verify", "bool x bool", "-n", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(line(&out, "closure_order").contains("SKIPPED(closure-cap)"));
    assert!(line(&out, "oracle_order").contains("PASS"));
}

#[test]
fn verify_skips_when_over_budget() {
    let out = zdaut(&["verify", "bool", "-n", "2", "--search-budget", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(line(&out, "oracle_order").contains("SKIPPED(budget)"));
}

#[test]
fn output_is_deterministic() {
    let a = zdaut(&["aut", "bool x chain3"]);
    let b = zdaut(&["aut", "bool x chain3"]);
    assert_eq!(a, b);
}

#[test]
fn info_lists_annihilators() {
    let out = zdaut(&["info", "chain3"]);
    assert_eq!(line(&out, "zero_divisors"), "zero_divisors {0}");
    assert_eq!(line(&out, "annihilator 0"), "annihilator 0 {0,a,1}");
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_zdaut");
    let ok = Command::new(bin).args(["aut", "bool", "-n", "2"]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("order 10080"));
    let bad = Command::new(bin).args(["validate", &data("z2.txt")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn verify_flags_alpha_dependence() {
    let out = zdaut(&["verify", "bool x chain3"]);
    assert_eq!(out.code, 1);
    assert_eq!(line(&out, "oracle_order"), "oracle_order PASS 4");
    assert_eq!(
        line(&out, "alpha_invariance"),
        "alpha_invariance FAIL alpha=(1,a) parts=(0,a)+(1,0) length=2 gives 8"
    );
}
