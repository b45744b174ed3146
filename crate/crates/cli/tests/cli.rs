use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupdet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn eval_c4() {
    let o = run(&["eval", "C4", "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-160");
    assert_eq!(json(&["eval", "C4", "1,2,3,4"])["value"], -160);
}

#[test]
fn eval_negative_entries_and_dihedral() {
    let o = run(&["eval", "D16", "-1,0,1,2,0,0,0,0,0,0,0,0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "140625");
}

#[test]
fn classify_2048_is_excluded() {
    let v = json(&["classify", "2048"]);
    assert_eq!(v["member"], false);
    assert_eq!(v["clause"], "excluded-2^11-shape");
    assert_eq!(v["certificate"]["kind"], "excluded-shape");
    assert_eq!(v["certificate"]["primes"], serde_json::json!([]));
}

#[test]
fn classify_json_round_trips() {
    for n in ["9", "-15", "34816", "3072", "0"] {
        let v = json(&["classify", n]);
        let verdict: groupdet::c8c2::Verdict = serde_json::from_value(v.clone()).unwrap();
        assert!(verdict.member && verdict.verify());
        assert_eq!(serde_json::to_value(&verdict).unwrap(), v);
    }
}

#[test]
fn zpoly_c4() {
    let o = run(&["zpoly", "C4", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "z_0 = x_0^2 - 2*x_1*x_3 + x_2^2\nz_2 = 2*x_0*x_2 - x_1^2 - x_3^2\n");
}

#[test]
fn factor_report_json() {
    let v = json(&["factor", "C4", "2", "1,2,3,4"]);
    assert_eq!(v["product"], -160);
    assert_eq!(v["subgroup"], serde_json::json!([0, 2]));
    let report: groupdet::gdet::FactorReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.z(0), Some(&(-6).into()));
}

#[test]
fn witnesses() {
    let v = json(&["witness", "pattern", "1", "3"]);
    assert_eq!(v["value"], 49);
    assert_eq!(v["verified"], true);
    let v = json(&["witness", "prime", "2", "3", "0"]);
    assert_eq!(v["value"], 2048 * 9);
    let v = json(&["witness", "value", "-15"]);
    assert_eq!(v["witness"].as_array().unwrap().len(), 16);
    let o = run(&["witness", "value", "2048"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["witness", "pattern", "9", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_lemma() {
    let o = run(&["check-lemma", "odd-d4-mod16"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS odd-d4-mod16"));
    assert_eq!(run(&["check-lemma", "nonsense"]).status.code(), Some(2));
}

#[test]
fn search_and_verify_subset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    let p = path.to_str().unwrap();
    let v = json(&["search", "C8xC2", "--box", "0..1", "--value-bound", "8192", "--out", p]);
    assert_eq!(v["scanned"], 65536);
    let o = run(&["verify-subset", "--inner", p, "--outer", "C8xC2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(run(&["verify-subset", "--inner", p, "--outer", "C8"]).status.code(), Some(0));
    let small = dir.path().join("c2.jsonl");
    let s = small.to_str().unwrap();
    assert!(run(&["search", "C2", "--box=-2..2", "--out", s]).status.success());
    assert_eq!(run(&["verify-subset", "--inner", s, "--outer", "C8"]).status.code(), Some(1));
    assert_eq!(run(&["verify-subset", "--inner", s, "--outer", "C2"]).status.code(), Some(0));
    assert_eq!(run(&["verify-subset", "--inner", s, "--outer", p]).status.code(), Some(1));
}

#[test]
fn search_is_deterministic_across_threads() {
    let a = json(&["--threads", "1", "search", "C8xC2", "--box=-1..1", "--samples", "20000", "--seed", "5"]);
    let b = json(&["--threads", "3", "search", "C8xC2", "--box=-1..1", "--samples", "20000", "--seed", "5"]);
    assert_eq!(a["values"], b["values"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["eval", "C4", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "Q8", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "C4", "1,x,3,4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "C4", "1,2,3,4", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["search", "C8xC2", "--box", "-3..3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "170141183460469231731687303715884105727"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest", "--samples", "5"]);
    assert_eq!(v["passed"], true);
}
