use std::process::{Command, Output};

use num_rational::BigRational;
use polyzeta::ncalg::NcPoly;
use polyzeta::words::Alphabet;
use serde_json::Value;

fn polyzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = polyzeta(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn regularize_minus_one_minus_one() {
    let v = json(&["regularize", "(-1,-1)"]);
    assert_eq!(v["combo"], serde_json::json!(["-1", "5", "-7", "3"]));
    assert_eq!(v["gamma"], "11/24");
    assert_eq!(v["zeta_shuffle"], "0");
    assert_eq!(v["finite_part"], "0");
}

#[test]
fn regularize_rejects_positive_index() {
    let o = polyzeta(&["regularize", "(2,1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
}

#[test]
fn mzv_two_two() {
    let v = json(&["mzv", "(2,2)"]);
    let value: f64 = v["value"].as_str().unwrap().parse().unwrap();
    let bound: f64 = v["bound"].as_str().unwrap().parse().unwrap();
    assert!(bound <= 1e-10);
    assert!((value - std::f64::consts::PI.powi(4) / 120.0).abs() < 1e-12);
}

#[test]
fn shuffle_output_parses_back() {
    let o = polyzeta(&["shuffle", "x0", "x1"]);
    let text = stdout(&o);
    assert_eq!(text.trim(), "x0 x1 + x1 x0");
    let p: NcPoly<BigRational> = NcPoly::parse(Alphabet::X, text.trim()).unwrap();
    let v = json(&["shuffle", "x0", "x1"]);
    assert_eq!(NcPoly::from_json(Alphabet::X, &v).unwrap(), p);
}

#[test]
fn stuffle_needs_y() {
    assert_eq!(
        stdout(&polyzeta(&["stuffle", "y1", "y1"])).trim(),
        "(2)*y1 y1 + y2"
    );
    assert_eq!(polyzeta(&["stuffle", "x0", "x1"]).status.code(), Some(2));
}

#[test]
fn star_series_round_trips() {
    let v = json(&["star", "(x0 + x1)*", "--max-weight", "3"]);
    let s = NcPoly::<BigRational>::from_json(Alphabet::X, &v["series"]).unwrap();
    assert_eq!(s.len(), 15);
    let text = stdout(&polyzeta(&["star", "(x0 + x1)*", "--max-weight", "3"]));
    assert_eq!(NcPoly::parse(Alphabet::X, text.trim()).unwrap(), s);
}

#[test]
fn minimize_shrinks() {
    let v = json(&["minimize", "x0* sh x0*"]);
    assert_eq!(v["dim"], 1);
    assert!(v["dim_before"].as_u64().unwrap() > 1);
}

#[test]
fn lyndon_listing() {
    let v = json(&["lyndon", "x", "--max-weight", "3"]);
    assert_eq!(
        v,
        serde_json::json!(["x0", "x0 x0 x1", "x0 x1", "x0 x1 x1", "x1"])
    );
}

#[test]
fn exact_and_numeric_sums() {
    assert_eq!(json(&["hsum", "(2,1)", "4"])["value"], "17/32");
    let li: f64 = json(&["li", "(1)", "0.5"])["re"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((li - std::f64::consts::LN_2).abs() < 1e-12);
    let g: f64 = json(&["gammafn", "2", "0.5i"])["re"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((g - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn guards_and_parse_errors() {
    assert_eq!(
        polyzeta(&["--prec-bits", "32", "mzv", "(2)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        polyzeta(&["--max-weight", "13", "star", "x0*"])
            .status
            .code(),
        Some(2)
    );
    let o = polyzeta(&["star", "(x0 + x1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 8"));
}

#[test]
fn verify_report_schema() {
    let v = json(&[
        "verify", "--filter", "c03.*", "--filter", "c04.*", "--jobs", "2",
    ]);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 6);
    for e in items {
        for key in ["identity_id", "paper_ref", "status", "lhs", "rhs", "bound"] {
            assert!(e.get(key).is_some(), "{key} missing");
        }
        assert_eq!(e["status"], "pass");
    }
    let ids: Vec<&str> = items
        .iter()
        .map(|e| e["identity_id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn verify_discrepancies_do_not_fail() {
    let o = polyzeta(&["verify", "--filter", "c12.zeta-shuffle*"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[discrepancy] c12.zeta-shuffle(-2,-1)"));
}

#[test]
fn verify_rejects_empty_selection() {
    assert_eq!(
        polyzeta(&["verify", "--filter", "nothing"]).status.code(),
        Some(2)
    );
}
