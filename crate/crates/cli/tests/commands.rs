use std::process::{Command, Output};

use serde_json::Value;

const SQRT3: &str = "Q[s]/(s^2 - 3)";
const QUADRATIC_P: &str = "((s/2 - 1/3)x^2 + x - (s/2 + 1/3))/(x^2 + 1)";
const QUADRATIC_Q: &str = "x^2/(x^2 + x + 1)";
const S33: &str = "Q[s]/(s^2 - 33)";
const CUBIC_P: &str = "(x^2 + ((6 - s)/3)x + (23 - 4s)/9)/x^3";
const CUBIC_Q: &str = "x^2/(x^3 - 6x^2 + 11x - 6)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ultranev"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn check_m_exit_codes() {
    let ok = run(&[
        "--field",
        SQRT3,
        "--p",
        "5",
        "check-m",
        QUADRATIC_P,
        QUADRATIC_Q,
    ]);
    assert_eq!(code(&ok), 0);
    let r = json(&ok);
    assert_eq!(r["satisfied"], "Yes");
    assert_eq!(r["k"], 2);
    let values: Vec<&str> = r["critical_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, vec!["2/3", "-4/3"]);

    let no = run(&["--p", "5", "check-m", "x^2", "x^2"]);
    assert_eq!(code(&no), 1);
    assert_eq!(json(&no)["satisfied"], "No(3)");

    let bad = run(&["--p", "5", "check-m", "x^2 +* 1", "x"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("parse error at position"));
    assert!(bad.stdout.is_empty());
}

#[test]
fn check_m_lifts_irrational_points_with_hints_absent() {
    let at = run(&[
        "--p",
        "7",
        "--precision",
        "12",
        "check-m",
        "x^3 - 6x",
        "x^2 + 1",
    ]);
    assert_eq!(code(&at), 2);
    assert_eq!(json(&at)["satisfied"], "YesAtPrecision(12)");
}

#[test]
fn verdict_settings() {
    let entire = run(&[
        "--field",
        SQRT3,
        "--p",
        "5",
        "verdict",
        QUADRATIC_P,
        QUADRATIC_Q,
        "--setting",
        "entire",
    ]);
    assert_eq!(code(&entire), 0);
    let v = json(&entire);
    assert_eq!(v["conclusion"], "RuledOut");
    assert_eq!(v["trace"]["inequality"]["lhs"], "4");
    assert_eq!(v["trace"]["inequality"]["rhs"], "2");

    let disk = run(&[
        "--field",
        S33,
        "--p",
        "5",
        "verdict",
        CUBIC_P,
        CUBIC_Q,
        "--setting",
        "disk",
    ]);
    assert_eq!(code(&disk), 2);
    assert_eq!(
        json(&disk)["conclusion"],
        "Inconclusive(InequalityConsistent)"
    );

    let mero = run(&[
        "--p",
        "5",
        "verdict",
        "x^9/(x-1)",
        "x^2+1",
        "--setting",
        "mero-k",
    ]);
    assert_eq!(code(&mero), 0);
    let v = json(&mero);
    assert_eq!(v["conclusion"], "RuledOut");
    assert_eq!(v["trace"]["lambda"]["value"], "2");
    assert_eq!(v["trace"]["inequality"]["relation"], ">");

    let all = run(&["--p", "5", "verdict", "x^9/(x-1)", "x^2+1"]);
    assert_eq!(json(&all).as_array().unwrap().len(), 6);
}

#[test]
fn nev_literals() {
    let d = json(&run(&["--p", "5", "nev", "zero@0 x1"]));
    assert_eq!(d["Z"]["segments"][0][1], "1");

    let s = json(&run(&["--p", "5", "nev", "[1, 1, 5]", "--at", "3/2"]));
    let breaks: Vec<&str> = s["Z"]["segments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|seg| seg[0].as_str().unwrap())
        .collect();
    assert_eq!(breaks, vec!["0", "1"]);
    assert_eq!(s["at"]["Z"], "2");

    let e = json(&run(&["--p", "5", "nev", "empty"]));
    for name in ["Z", "N", "T", "Zt", "Nt"] {
        assert_eq!(e[name]["anchor"], "0");
        assert_eq!(e[name]["segments"].as_array().unwrap().len(), 1);
        assert_eq!(e[name]["segments"][0][1], "0");
    }

    let beyond = run(&["--p", "5", "nev", "[1, 5, 25] @ 3, tail(0, 1)", "--at", "2"]);
    assert_eq!(code(&beyond), 2);
}

#[test]
fn nev_csv_is_plot_data() {
    let out = run(&["--p", "5", "--format", "csv", "nev", "[1, 1, 5]"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("function,t,value,slope"));
    assert!(text.contains("Z,1,1,2"));
}

#[test]
fn theorem_n_reports() {
    let r = run(&["--p", "5", "theorem-n", "1 + x", "--alphas", "2, 3"]);
    assert_eq!(code(&r), 0);
    let v = json(&r);
    assert_eq!(v["verdict"], "HoldsEventually");
    assert_eq!(v["slack_slope"], "0");

    let cubic = json(&run(&[
        "--p",
        "5",
        "theorem-n",
        "(1+x)(2+x)(3+x)",
        "--alphas",
        "1, 7",
    ]));
    assert_eq!(cubic["slack_slope"], "2");

    let single = run(&["--p", "5", "theorem-n", "1 + x", "--alphas", "2"]);
    assert_eq!(code(&single), 2);
    assert!(String::from_utf8_lossy(&single.stderr).contains("hypothesis violated"));
}

#[test]
fn zeros_counts() {
    let r = json(&run(&["--p", "5", "zeros", "[1, 1, 5]", "--at", "1"]));
    assert_eq!(r["count"], 2);
    let open = json(&run(&[
        "--p",
        "5",
        "zeros",
        "1 + x + 5x^2",
        "--at",
        "1",
        "--open",
    ]));
    assert_eq!(open["count"], 1);
    assert_eq!(code(&run(&["--p", "5", "zeros", "[1, 1, 5]"])), 2);
}

#[test]
fn json_output_round_trips() {
    let cases: [&[&str]; 4] = [
        &[
            "--field",
            SQRT3,
            "--p",
            "5",
            "check-m",
            QUADRATIC_P,
            QUADRATIC_Q,
        ],
        &["--p", "5", "verdict", "x^9/(x-1)", "x^2+1"],
        &["--p", "5", "nev", "pole@-1/2 x2; zero@1"],
        &["--p", "5", "theorem-n", "1 + x", "--alphas", "2, 3"],
    ];
    for args in cases {
        let out = run(args);
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let back = serde_json::to_string(&json(&out)).unwrap();
        assert_eq!(text.trim_end(), back);
    }
}

#[test]
fn field_options() {
    let r = run(&[
        "--field",
        "F3(T)",
        "verdict",
        "T^3 x^9/(x - T^3)",
        "x^2 + T^3",
        "--setting",
        "mero-k",
    ]);
    assert_eq!(code(&r), 0);
    let json_field = r#"{"char": 0, "p": 5, "ext": {"gen": "s", "minpoly": "x^2 - 3"}}"#;
    let r = run(&["--field", json_field, "check-m", QUADRATIC_P, QUADRATIC_Q]);
    assert_eq!(code(&r), 0);
    assert_eq!(code(&run(&["check-m", "x^2", "x^3"])), 2);
    assert_eq!(code(&run(&["--p", "5", "--order", "3", "nev", "1 + x"])), 2);
}
