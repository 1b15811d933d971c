use std::process::{Command, Output};

use serde_json::Value;

fn twistq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn verdict(o: &Output) -> Value {
    records(o).pop().unwrap()
}

fn header(o: &Output, key: &str) -> String {
    records(o)[0]["header"][key].as_str().unwrap().to_string()
}

#[test]
fn diagram_check_solves_marks() {
    let o = twistq(&["--json", "diagram-check", "a2_2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o, "n"), "(1, 2)");
    assert_eq!(verdict(&o)["verdict"], "pass");
}

#[test]
fn malformed_diagram_exits_2_with_parse_record() {
    let dir = std::env::temp_dir().join(format!("twistq-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.toml");
    std::fs::write(&f, "name = \"x\"\nm = [").unwrap();
    let o = twistq(&["--json", "diagram-check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let recs = records(&o);
    assert_eq!(recs[1]["id"], "diagram.load");
    assert_eq!(recs[1]["pass"], false);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sl3tau_relations_window_3() {
    let o = twistq(&["--json", "check-relations", "--algebra", "sl3tau", "--rep", "Va", "--a", "sym", "--window", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(verdict(&o)["total"], 408);
}

#[test]
fn chevalley_relations_via_iso() {
    let o = twistq(&["--json", "check-relations", "--algebra", "chevalley", "--rep", "Va", "--window", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> = records(&o).iter().filter_map(|r| r["id"].as_str().map(String::from)).collect();
    assert!(ids.iter().any(|i| i.starts_with("chev.serre+")));
    assert!(ids.iter().any(|i| i.starts_with("chev.serre-")));
}

#[test]
fn window_grows_instance_count() {
    let n = |w: &str| {
        let o = twistq(&["--json", "--window", w, "check-relations", "--algebra", "sl3tau"]);
        verdict(&o)["total"].as_u64().unwrap()
    };
    assert!(n("0") < n("1"));
    assert!(n("1") < n("3"));
}

#[test]
fn rational_parameter() {
    let o = twistq(&["--window", "1", "check-relations", "--algebra", "sl3tau", "--a", "2/3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn drinfeld_of_va() {
    let o = twistq(&["--json", "drinfeld", "--rep", "Va", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o, "P[1]"), "1 - a*u");
    assert_eq!(header(&o, "K[1]"), "q^2");
}

#[test]
fn drinfeld_of_tensor() {
    let o = twistq(&["--json", "drinfeld", "--tensor", "sym", "sym", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o, "P"), "1 + (-a - b)*u + a*b*u^2");
}

#[test]
fn drinfeld_sigma_pair() {
    let o = twistq(&["--json", "drinfeld", "--rep", "Va-a2_2", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(header(&o, "P[2]"), "1 + a*u");
}

#[test]
fn zero_parameter_is_an_error() {
    let o = twistq(&["drinfeld", "--rep", "Va", "--a", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invertible"));
}

#[test]
fn unknown_rep_and_usage_errors() {
    assert_eq!(twistq(&["rep-info", "--rep", "nope"]).status.code(), Some(2));
    assert_eq!(twistq(&["check-relations", "--algebra", "bogus"]).status.code(), Some(2));
    assert_eq!(twistq(&["check-relations", "--algebra", "sl2"]).status.code(), Some(2));
}

#[test]
fn identities_separate_classes_and_fail_on_shift() {
    let o = twistq(&["--json", "identities", "--rmax", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let recs = records(&o);
    let classes: std::collections::BTreeSet<&str> = recs.iter().filter_map(|r| r["class"].as_str()).collect();
    assert!(classes.contains("identity") && classes.contains("hwv-congruence"));
    let failed: Vec<&str> = recs.iter().filter(|r| r["pass"] == false).map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(failed, ["id.dx-e0-shift[r=0]"]);
    let hwv_rs: std::collections::BTreeSet<&str> = recs
        .iter()
        .filter(|r| r["class"] == "hwv-congruence")
        .map(|r| r["id"].as_str().unwrap().rsplit_once('[').unwrap().1)
        .collect();
    assert_eq!(hwv_rs.into_iter().collect::<Vec<_>>(), ["r=0]"]);
}

#[test]
fn tensor_congruences() {
    let o = twistq(&["--json", "tensor", "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn pulled_back_fixed_node() {
    let o = twistq(&["--window", "2", "check-relations", "--algebra", "sl2", "--rep", "fixed-a3_2", "--node", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn machine_reports_are_deterministic() {
    let args = ["--json", "--jobs", "3", "check-relations", "--algebra", "sl3tau", "--window", "1"];
    assert_eq!(twistq(&args).stdout, twistq(&args).stdout);
    let one = twistq(&["--json", "--jobs", "1", "check-relations", "--algebra", "sl3tau", "--window", "1"]);
    assert_eq!(twistq(&args).stdout, one.stdout);
}

#[test]
fn dump_relations_is_jsonl() {
    let o = twistq(&["--window", "0", "dump-relations", "--algebra", "sl3tau"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    assert!(recs.iter().all(|r| r["algebra"] == "sl3tau"));
    assert!(!recs.is_empty());
}
