use std::process::{Command, Output};

use serde_json::Value;

#[allow(dead_code)]
#[path = "../src/report.rs"]
mod report;

fn pitgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pitgf")).args(args).env_remove("PITGF_JOBS").output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.lines().last().expect("one line of output")).expect("valid JSON")
}

fn coefficients(v: &Value) -> Vec<i64> {
    v["series"]["coefficients"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect()
}

#[test]
fn chi_prints_partition_numbers() {
    let out = pitgf(&["chi", "--n", "1", "--m", "0", "--nu", "", "--mu", "", "--lambda", "", "--order", "6", "--method", "det"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(coefficients(&v), vec![1, 1, 2, 3, 5, 7, 11]);
    assert_eq!(v["series"]["low"], 0);
    assert_eq!(v["method"], "det");
}

#[test]
fn chi_of_the_empty_pit_is_one() {
    let out = pitgf(&["chi", "--n", "0", "--m", "0", "--order", "5", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(coefficients(&stdout_json(&out)), vec![1, 0, 0, 0, 0, 0]);
}

#[test]
fn bosonic_sum_matches_the_oracle_on_the_worked_configuration() {
    let base = ["chi", "--n", "3", "--m", "2", "--nu", "3,1,1", "--mu", "2,0", "--lambda", "2,1,1", "--order", "8", "--method"];
    let bos = stdout_json(&pitgf(&[&base[..], &["bos"]].concat()));
    let oracle = stdout_json(&pitgf(&[&base[..], &["oracle"]].concat()));
    assert_eq!(bos["series"], oracle["series"]);
    assert_eq!(bos["config"]["mu"], "2");
}

#[test]
fn csv_lists_exponents_and_coefficients() {
    let out = pitgf(&["chi", "--n", "1", "--m", "1", "--lambda", "1", "--order", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "exponent,coefficient\n0,1\n1,2\n2,5\n3,10\n4,20\n");
}

#[test]
fn json_reports_round_trip() {
    let out = pitgf(&["chi", "--n", "2", "--m", "1", "--nu", "2,1", "--mu", "1", "--order", "30"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: report::ChiReport = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
    assert_eq!(parsed.series.coefficients.len(), 31);

    let out = pitgf(&["crosscheck", "--max-n", "1", "--max-m", "1", "--max-part", "1", "--order", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: report::CrosscheckReport = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
}

#[test]
fn invalid_input_exits_with_usage_code() {
    assert_eq!(pitgf(&["chi", "--n", "0", "--nu", "1"]).status.code(), Some(2));
    assert_eq!(pitgf(&["chi", "--n", "1", "--nu", "1,2"]).status.code(), Some(2));
    assert_eq!(pitgf(&["chi", "--n", "1", "--m", "1", "--method", "wall"]).status.code(), Some(2));
    assert_eq!(pitgf(&["chi", "--method", "nope"]).status.code(), Some(2));
    assert_eq!(pitgf(&["crosscheck", "--max-n", "5"]).status.code(), Some(2));
    assert_eq!(pitgf(&["brion-check", "--n", "2", "--nu", "1,1", "--H", "4"]).status.code(), Some(2));
}

#[test]
fn empty_battery_passes() {
    let out = pitgf(&["crosscheck", "--max-n", "-1", "--max-m", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["configs"], 0);
    assert_eq!(v["agree"], true);
}

#[test]
fn small_battery_agrees_and_is_deterministic() {
    let args = ["crosscheck", "--max-n", "1", "--max-m", "1", "--max-part", "2", "--order", "6", "--verbose"];
    let one = pitgf(&[&args[..], &["--jobs", "1"]].concat());
    let four = pitgf(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let from_env = Command::new(env!("CARGO_BIN_EXE_pitgf")).args(args).env("PITGF_JOBS", "2").output().unwrap();
    assert_eq!(from_env.stdout, one.stdout);
    let lines = String::from_utf8(one.stdout).unwrap();
    let summary: Value = serde_json::from_str(lines.lines().last().unwrap()).unwrap();
    assert_eq!(summary["configs"].as_u64().unwrap() as usize, lines.lines().count() - 1);
}

#[test]
fn brion_checks_match() {
    for args in [
        vec!["brion-check", "--n", "1", "--m", "0", "--nu", "0", "--H", "2"],
        vec!["brion-check", "--n", "2", "--m", "0", "--nu", "3,1", "--lambda", "1", "--H", "5"],
        vec!["brion-check", "--n", "1", "--m", "1", "--nu", "3", "--mu", "0", "--H", "6", "--Hp", "6"],
    ] {
        let out = pitgf(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = stdout_json(&out);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["agree"] == true), "{args:?}");
    }
    let geometric = stdout_json(&pitgf(&["brion-check", "--n", "1", "--m", "0", "--nu", "0", "--H", "2", "--order", "5"]));
    assert_eq!(coefficients(&geometric), vec![1; 6]);
}
