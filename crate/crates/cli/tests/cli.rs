use std::io;
use std::process::{Command, Output};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::Value;

fn pade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pade")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = pade(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn rows(v: &Value) -> &Vec<Value> {
    v["rows"].as_array().unwrap()
}

fn cell(v: &Value, p: u64, q: u64) -> &Value {
    rows(v).iter().find(|c| c["p"] == p && c["q"] == q).unwrap()
}

fn ratio(v: &Value) -> (&str, &str) {
    (v["re"].as_str().unwrap(), v["im"].as_str().unwrap())
}

struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }
}

fn reemit(v: &Value) -> String {
    let mut buf = Vec::new();
    v.serialize(&mut Serializer::with_formatter(&mut buf, Digits17)).unwrap();
    String::from_utf8(buf).unwrap() + "\n"
}

const RATIONAL_EXAMPLE: &[&str] = &[
    "--mode", "exact", "construct", "--kind", "rational", "--num", "1", "--den", "1,-1", "--p", "1", "--q", "2",
    "--eps", "0.5", "--region", "disk:0:1/2", "--grid-density", "4",
];

#[test]
fn rational_construction_report() {
    let v = json(RATIONAL_EXAMPLE);
    assert_eq!(v["command"], "construct");
    let r = &rows(&v)[0];
    assert_eq!(ratio(&r["d"]), ("1/4", "0/1"));
    let excluded = r["excluded_values"].as_array().unwrap();
    assert_eq!(excluded.len(), 1);
    assert_eq!(ratio(&excluded[0]["closed_form"]), ("-1/1", "0/1"));
    let num: Vec<_> = r["g_num"].as_array().unwrap().iter().map(ratio).collect();
    let den: Vec<_> = r["g_den"].as_array().unwrap().iter().map(ratio).collect();
    assert_eq!(num, [("1/1", "0/1"), ("1/4", "0/1")]);
    assert_eq!(den, [("1/1", "0/1"), ("-1/1", "0/1")]);
    assert_eq!(r["irreducible"], true);
    assert!(r["approximation"][0].as_f64().unwrap() < 0.5);
    let centers = r["centers"].as_array().unwrap();
    assert_eq!(centers.len(), 3);
    for c in centers {
        assert_eq!(c["member"], true);
        assert_eq!(c["exact_zero"], true);
        assert_eq!(c["order_defect"], "none");
        assert_eq!(c["residual"].as_f64(), Some(0.0));
    }
}

#[test]
fn polynomial_construction_report() {
    let v = json(&[
        "--mode", "exact", "construct", "--kind", "poly", "--poly", "0", "--p", "2", "--q", "1", "--eps", "0.1",
        "--region", "circle:0:1",
    ]);
    let r = &rows(&v)[0];
    assert_eq!(ratio(&r["d"]), ("1/20", "0/1"));
    for c in r["centers"].as_array().unwrap() {
        assert_eq!(c["det"], c["expected_det"]);
    }
}

#[test]
fn determinant_field_matches_closed_form() {
    // q = 2: expected −d².
    let v = json(&[
        "--mode", "exact", "construct", "--kind", "poly", "--poly", "1,-2", "--p", "3", "--q", "2", "--eps", "1",
        "--region", "circle:0:1", "--centers", "0;1+i;-1/3",
    ]);
    let r = &rows(&v)[0];
    assert_eq!(ratio(&r["d"]), ("1/2", "0/1"));
    for c in r["centers"].as_array().unwrap() {
        assert_eq!(ratio(&c["det"]), ("-1/4", "0/1"));
        assert_eq!(c["det"], c["expected_det"]);
    }
}

#[test]
fn smooth_construction_needs_order() {
    let base = ["construct", "--kind", "poly-smooth", "--poly", "0", "--p", "2", "--q", "1", "--eps", "1"];
    assert_eq!(pade(&base).status.code(), Some(2));
    let mut args = base.to_vec();
    args.extend(["--order", "2", "--region", "circle:0:1", "--mode", "exact"]);
    let v = json(&args);
    let r = &rows(&v)[0];
    assert_eq!(ratio(&r["d"]), ("1/4", "0/1"));
    assert_eq!(r["approximation"].as_array().unwrap().len(), 3);
}

#[test]
fn geometric_table_pattern() {
    let v = json(&["--mode", "exact", "table", "--oracle", "geometric", "--p-max", "2", "--q-max", "2"]);
    assert_eq!(rows(&v).len(), 9);
    for c in rows(&v) {
        let (p, q) = (c["p"].as_u64().unwrap(), c["q"].as_u64().unwrap());
        let member = c["member"].as_bool().unwrap();
        assert_eq!(member, q <= 1 || p == 0, "({p}, {q})");
        match c["predicted"].as_str().unwrap() {
            "member" => assert!(member),
            "not-member" => assert!(!member),
            _ => {}
        }
    }
    assert_eq!(cell(&v, 0, 1)["sup_error"].as_f64(), Some(0.0));
}

#[test]
fn cube_first_column_and_exp_cell() {
    let v = json(&["table", "--oracle", "polynomial", "--poly", "0,0,0,1", "--p-max", "6", "--q-max", "2"]);
    assert!(rows(&v).iter().filter(|c| c["q"] == 0).all(|c| c["member"] == true));
    let v = json(&["--mode", "exact", "table", "--oracle", "exp", "--p-max", "1", "--q-max", "1"]);
    let c = cell(&v, 1, 1);
    assert_eq!(c["member"], true);
    assert_eq!(ratio(&c["det"]), ("1/1", "0/1"));
}

#[test]
fn membership_subcommand() {
    let v = json(&[
        "--mode", "exact", "membership", "--oracle", "rational", "--num", "1,1", "--den", "1,-1", "--p", "1", "--q",
        "1",
    ]);
    let r = &rows(&v)[0];
    assert_eq!(r["predicted"], "member");
    assert_eq!(r["agrees"], true);
    assert_eq!(r["exact_reproduction"], true);
    assert_eq!(ratio(&r["det"]), ("2/1", "0/1"));
}

#[test]
fn exp_row_convergence_decreases() {
    let v = json(&["converge", "--oracle", "exp", "--family", "row:1", "--max-n", "12", "--grid-density", "8"]);
    let errs: Vec<f64> = rows(&v).iter().map(|r| r["sup_error"][0].as_f64().unwrap()).collect();
    assert_eq!(errs.len(), 12);
    for w in errs[1..10].windows(2) {
        assert!(w[1] < w[0], "{errs:?}");
    }
}

#[test]
fn geometric_single_pair() {
    let v = json(&[
        "converge", "--oracle", "geometric", "--family", "explicit:0/1", "--region", "disk:0:1/2", "--max-n", "5",
    ]);
    assert_eq!(rows(&v).len(), 1);
    assert!(rows(&v)[0]["sup_error"][0].as_f64().unwrap() <= 1e-12);
}

#[test]
fn constructed_rational_is_reproduced() {
    let v = json(&[
        "--mode", "exact", "--grid-density", "4", "converge", "--oracle", "rational", "--num", "1,1/4", "--den",
        "1,-1", "--family", "explicit:1/2", "--max-n", "1", "--centers", "points:0;1/4i", "--region", "disk:0:1/2",
    ]);
    assert_eq!(rows(&v)[0]["member_all_centers"], true);
    assert_eq!(rows(&v)[0]["sup_error"][0].as_f64(), Some(0.0));
}

#[test]
fn json_reemits_byte_identical() {
    let out = pade(RATIONAL_EXAMPLE);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(reemit(&parsed), text);
    let float_run = pade(&["converge", "--oracle", "exp", "--family", "row:1", "--max-n", "4", "--orders", "2"]);
    let text = String::from_utf8(float_run.stdout).unwrap();
    assert_eq!(reemit(&serde_json::from_str(&text).unwrap()), text);
    assert_eq!(pade(&["converge", "--oracle", "exp", "--family", "row:1", "--max-n", "4", "--orders", "2"]).stdout, text.as_bytes());
}

#[test]
fn params_echo_the_invocation() {
    let v = json(RATIONAL_EXAMPLE);
    assert_eq!(v["params"]["mode"], "exact");
    assert_eq!(v["params"]["kind"], "rational");
    assert_eq!(v["params"]["eps"], "0.5");
    assert_eq!(v["params"]["grid_density"], 4);
}

#[test]
fn csv_columns_are_fixed() {
    let out = pade(&["table", "--oracle", "geometric", "--p-max", "1", "--q-max", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q,member,det_re,det_im,scale,predicted,sup_error"));
    assert_eq!(lines.count(), 4);
    let out = pade(&["converge", "--oracle", "exp", "--max-n", "2", "--orders", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,p,q,member_all_centers,sup_error_0,sup_error_1"));
}

#[test]
fn pole_and_not_normal_markers() {
    // [1/1] of 1/(1 − z) is the function itself, with its pole on the circle |z| = 1.
    let v = json(&["converge", "--oracle", "geometric", "--family", "explicit:1/1,1/2", "--region", "circle:0:1"]);
    assert_eq!(rows(&v)[0]["sup_error"][0], "pole");
    assert_eq!(rows(&v)[1]["sup_error"][0], "not-normal");
    assert_eq!(rows(&v)[1]["member_all_centers"], false);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("pade-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let out = pade(&["table", "--oracle", "exp", "--p-max", "1", "--q-max", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "table");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(pade(&["table", "--oracle", "exp"]).status.code(), Some(0));
    assert_eq!(pade(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pade(&["table", "--oracle", "exp", "--center", "1/0"]).status.code(), Some(2));
    assert_eq!(pade(&["table", "--oracle", "rational", "--num", "1"]).status.code(), Some(2));
    assert_eq!(pade(&["table", "--oracle", "exp", "--p-max", "13"]).status.code(), Some(2));
    assert_eq!(pade(&["construct", "--kind", "poly", "--poly", "1,1", "--p", "1", "--q", "1", "--eps", "1"]).status.code(), Some(2));
    // Exact exp coefficients exist only at the origin.
    let out = pade(&["--mode", "exact", "table", "--oracle", "exp", "--center", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    // Center on the pole of 1/(1 − z).
    assert_eq!(pade(&["table", "--oracle", "geometric", "--center", "1"]).status.code(), Some(3));
}
