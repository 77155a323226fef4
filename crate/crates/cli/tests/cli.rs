use std::process::{Command, Output};

fn rrcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrcc")).args(args).env_remove("RRCC_BUDGET").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = rrcc(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

#[test]
fn factor_over_f17() {
    let text = ok(&["--p", "17", "--r", "3", "factor"]);
    assert!(text.starts_with("x^136 - 1 = (x + 1)^17(x + 2)^17"), "{text}");
    assert_eq!(text.matches(")^17").count(), 8);
}

#[test]
fn factor_over_f7_has_quadratics() {
    let text = ok(&["--p", "7", "--r", "3", "factor"]);
    assert_eq!(text, "x^56 - 1 = (x + 1)^7(x + 6)^7(x^2 + 1)^7(x^2 + 3*x + 1)^7(x^2 + 4*x + 1)^7\n");
}

#[test]
fn non_prime_characteristic_is_rejected() {
    let out = rrcc(&["--p", "4", "--r", "3", "factor"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("odd prime"));
}

#[test]
fn code_record() {
    let v = json(&["--p", "17", "--r", "3", "code", "--gen", "(x+1)^2(x+8)"]);
    assert_eq!(v["n"], 136);
    assert_eq!(v["k"], 133);
    assert_eq!(v["hull_dim"], 3);
    assert_eq!(v["dual_containing"], true);
    assert_eq!(v["distance"]["d"], 3);
}

#[test]
fn trivial_code_from_exponents() {
    let v = json(&["--p", "17", "--r", "3", "code", "--exps", "0:0"]);
    assert_eq!(v["k"], 136);
    assert_eq!(v["distance"]["d"], 1);
}

#[test]
fn non_divisor_is_rejected() {
    let out = rrcc(&["--p", "17", "--r", "3", "code", "--gen", "(x+3)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not divide"), "{}", stderr(&out));
}

#[test]
fn quantum_constructions() {
    assert!(ok(&["--p", "17", "--r", "3", "quantum", "css", "--gen", "(x+1)^2(x+8)"]).starts_with("[[136,130,3]]"));
    let steane = ok(&["--p", "13", "--r", "3", "quantum", "steane", "--gen", "(x+1)^2(x^2+5)", "--outer-gen", "(x+1)"]);
    assert!(steane.starts_with("[[104,99,3]]"), "{steane}");
    let ea = ok(&["--p", "31", "--r", "3", "quantum", "eaqec", "--gen", "(x+1)^16(x^2+8x+1)"]);
    assert!(ea.starts_with("[[248,213,4;1]]"), "{ea}");
}

#[test]
fn steane_needs_a_larger_outer_code() {
    let out = rrcc(&["--p", "17", "--r", "3", "quantum", "steane", "--gen", "(x+1)^2(x+8)", "--outer-gen", "(x+1)^2(x+8)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k+1"));
}

#[test]
fn dual_containing_scan_agrees_with_count() {
    let text = ok(&["--p", "7", "--r", "3", "scan", "dual-containing"]);
    assert_eq!(text.lines().count(), 1025);
    assert_eq!(text.lines().last().unwrap(), "enumerated 1024, closed-form 1024, match");
    assert!(ok(&["--p", "3", "--r", "3", "scan", "dual-containing"]).ends_with("enumerated 80, closed-form 80, match\n"));
}

#[test]
fn qec_mds_scan() {
    let v = json(&["--p", "23", "--r", "3", "scan", "qec-mds"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["n"] == 184 && r["d"].as_u64().unwrap() <= 2));
    assert_eq!(v["summary"], "certified 3, exhaustive 3, match");
}

#[test]
fn scan_filters() {
    let v = json(&["--p", "7", "--r", "3", "scan", "dual-containing", "--min-d", "4", "--min-k", "40"]);
    let rows = v["results"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["d"].as_u64().unwrap() >= 4 && r["k"].as_u64().unwrap() >= 40));
}

#[test]
fn csv_header_order() {
    let text = ok(&["--p", "23", "--r", "3", "--format", "csv", "scan", "qec-mds"]);
    assert_eq!(text.lines().next().unwrap(), "n,k,d,generator,construction,extra");
    assert!(text.lines().last().unwrap().starts_with("# "));
}

#[test]
fn scans_do_not_depend_on_thread_count() {
    let run = |jobs: &str| ok(&["--p", "11", "--r", "3", "--jobs", jobs, "--format", "csv", "scan", "dual-containing"]);
    assert_eq!(run("1"), run("4"));
}

#[test]
fn budget_from_environment_wins() {
    let out = Command::new(env!("CARGO_BIN_EXE_rrcc"))
        .args(["--p", "3", "--r", "3", "--budget", "100000", "scan", "mds"])
        .env("RRCC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget"));
    let out = Command::new(env!("CARGO_BIN_EXE_rrcc")).args(["factor"]).env("RRCC_BUDGET", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_fixtures() {
    let v = json(&["reproduce", "example12"]);
    let f = &v["fixtures"][0];
    assert_eq!(f["status"], "match");
    assert!(f["checks"].as_array().unwrap().iter().any(|c| c["item"] == "quantum" && c["recomputed"] == "[[104,69,8;1]]"));

    let v = json(&["reproduce", "example1"]);
    assert_eq!(v["fixtures"][0]["status"], "documented-discrepancy");
    assert_eq!(v["ledger"].as_array().unwrap().len(), 1);

    let v = json(&["reproduce", "table2"]);
    let checks = v["fixtures"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "mismatch"));
}

#[test]
fn reproduce_all_has_no_mismatch() {
    let text = ok(&["reproduce", "all"]);
    assert!(text.trim_end().ends_with("0 mismatch"), "{}", text.lines().last().unwrap());
    assert!(!text.contains(" BAD "));
}

#[test]
fn unknown_fixture() {
    assert_eq!(rrcc(&["reproduce", "table99"]).status.code(), Some(2));
}
