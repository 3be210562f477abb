use std::process::{Command, Output};

use dcl_cli::output::{parse, render, TableFormat};
use dcl_core::SequenceId;

fn dcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcl"))
        .args(args)
        .env_remove("DCL_MAX_ORDER")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_thm7_json() {
    let o = dcl(&[
        "verify",
        "--identity",
        "thm7",
        "--n-max",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["id"], "thm7");
    assert_eq!(reports[0]["n_max"], 8);
    assert!(reports[0]["first_failure"].is_null());
    let results = reports[0]["results"].as_array().unwrap();
    assert!(results.iter().all(|r| r["pass"] == true));
}

#[test]
fn printed_only_exits_1() {
    let o = dcl(&["verify", "--n-max", "1", "--variants", "printed"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out
        .lines()
        .any(|l| l.starts_with("thm3") && l.contains("FAIL")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("thm5") && l.contains("lhs - rhs = l")));
}

#[test]
fn both_variants_exit_0_and_record_failures() {
    let o = dcl(&["verify", "--n-max", "1", "--variants", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out
        .lines()
        .any(|l| l.starts_with("thm5") && l.contains("printed") && l.contains("FAIL")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("thm5") && l.contains("corrected") && l.contains("PASS")));
}

#[test]
fn usage_errors() {
    assert_eq!(
        dcl(&["table", "--seq", "nosuch", "--n-max", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dcl(&["verify", "--identity", "nosuch", "--n-max", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(dcl(&["verify", "--n-max", "0"]).status.code(), Some(2));
    assert_eq!(dcl(&[]).status.code(), Some(2));
    let o = dcl(&[
        "table",
        "--seq",
        "daehee",
        "--n-max",
        "2",
        "--out",
        "/nonexistent/dir/t.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write"));
    assert_eq!(dcl(&["--help"]).status.code(), Some(0));
}

#[test]
fn documented_table_rows() {
    let o = dcl(&[
        "table",
        "--seq",
        "degen_cauchy2",
        "--n-max",
        "2",
        "--x",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,lambda,x,value\n0,sym,0,1\n1,sym,0,1/2 + 1/2*l\n2,sym,0,-1/6 - 1/6*l^2\n"
    );
    let o = dcl(&[
        "table",
        "--seq",
        "degen_cauchy2",
        "--n-max",
        "2",
        "--x",
        "0",
        "--lambda",
        "0",
    ]);
    assert_eq!(
        stdout(&o),
        "n,lambda,x,value\n0,0,0,1\n1,0,0,1/2\n2,0,0,-1/6\n"
    );
}

#[test]
fn tables_round_trip_byte_exactly() {
    for seq in [
        "degen_cauchy2",
        "degen_cauchy_star",
        "bernoulli_higher:2",
        "stirling1",
        "daehee_higher:3",
    ] {
        for (flag, format) in [("csv", TableFormat::Csv), ("json", TableFormat::Json)] {
            for lambda in ["sym", "-1/3"] {
                let o = dcl(&[
                    "table", "--seq", seq, "--n-max", "7", "--format", flag, "--lambda", lambda,
                ]);
                assert_eq!(o.status.code(), Some(0), "{seq} {flag}");
                let text = stdout(&o);
                let id: SequenceId = seq.parse().unwrap();
                let back = render(&parse(&text, format, id).unwrap(), format).unwrap();
                assert_eq!(back, text, "{seq} {flag} λ={lambda}");
            }
        }
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let args = [
        "table",
        "--seq",
        "cauchy_poly",
        "--n-max",
        "5",
        "--format",
        "json",
    ];
    let o = dcl(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), dcl(&args).stdout);
}

#[test]
fn max_order_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_dcl"))
        .args(["table", "--seq", "daehee", "--n-max", "50"])
        .env("DCL_MAX_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("capped to 3"));

    let o = Command::new(env!("CARGO_BIN_EXE_dcl"))
        .args(["series", "--name", "L", "--order", "4"])
        .env("DCL_MAX_ORDER", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n-max", "4", "--format", "json"];
    assert_eq!(dcl(&args).stdout, dcl(&args).stdout);
}
