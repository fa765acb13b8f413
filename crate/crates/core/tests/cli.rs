use std::process::{Command, Output};

use wronsk::certify::Verdict;
use wronsk::report::{Mode, VerificationReport};
use wronsk::TheoremTag;

fn wronsk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wronsk")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn reports(out: &Output) -> Vec<VerificationReport> {
    stdout(out)
        .lines()
        .map(|l| {
            let r: VerificationReport = serde_json::from_str(l).expect("schema-conforming line");
            r.validate().unwrap();
            r
        })
        .collect()
}

#[test]
fn wronskian_examples() {
    let out = wronsk(&["wronskian", "--d", "1", "--spec", "1,x", "--f", "x", "--f", "x^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x^2");
    let out = wronsk(&["wronskian", "--d", "2", "--spec", "1,x,y", "--f", "1", "--f", "x", "--f", "y"]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = wronsk(&["wronskian", "--d", "2", "--spec", "1,x,y", "--rho", "x", "--f", "1", "--f", "x", "--f", "y"]);
    assert_eq!(stdout(&out).trim(), "x");
}

#[test]
fn wronskian_reads_a_fixture_file() {
    let path = std::env::temp_dir().join(format!("wronsk-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "# columns\nx\n\nx^2  # second\n").unwrap();
    let out = wronsk(&["wronskian", "--d", "1", "--spec", "1,x", "--functions", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(stdout(&out).trim(), "x^2");
}

#[test]
fn wronskian_errors() {
    let out = wronsk(&["wronskian", "--d", "1", "--spec", "1,x", "--f", "x", "--f", "x^"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("offset 2"), "{err}");
    assert!(err.contains("\n    ^"), "{err}");
    let out = wronsk(&["wronskian", "--d", "1", "--spec", "1,x", "--f", "x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_examples() {
    let out = wronsk(&["enumerate", "--d", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines, ["1", "x", "y", "xx", "xy", "yy", "count: 6"]);
    let out = wronsk(&["--json", "enumerate", "--d", "1", "--k", "0"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["count"], 1);
    assert_eq!(v["indices"], serde_json::json!(["1"]));
    assert_eq!(wronsk(&["enumerate", "--d", "0", "--k", "1"]).status.code(), Some(1));
}

#[test]
fn verify_examples() {
    let out = wronsk(&["--json", "verify", "--d", "2", "--outer", "1,x,y", "--inner", "1,x,y"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    assert!(r.verdict == Verdict::Zero && r.certifying);
    assert_eq!(r.classification, Some(TheoremTag::CompleteComplete));

    // Inner {1,x,y,xx} lacks two of three second-order rows; one outer slot
    // does not outnumber them.
    let out = wronsk(&["--json", "verify", "--d", "2", "--outer", "1,x,y", "--inner", "1,x,y,xx"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    assert!(r.verdict == Verdict::Zero && r.certifying);
    assert_eq!(r.classification, Some(TheoremTag::InsufficientOuter));

    let out = wronsk(&["--json", "verify", "--d", "2", "--outer", "1,y", "--inner", "1,x", "--allow-inadmissible"]);
    assert_eq!(out.status.code(), Some(3));
    let r = &reports(&out)[0];
    assert_eq!(r.verdict, Verdict::Nonzero);
    assert_eq!(r.witnesses[0].args, ["1", "x", "y"]);
    assert_eq!(r.witnesses[0].value, "2");
}

#[test]
fn strict_mode_names_the_violated_condition() {
    let out = wronsk(&["verify", "--d", "2", "--outer", "1,y", "--inner", "1,x"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("first-order derivatives is complete"), "{err}");
    assert!(err.contains("--allow-inadmissible"), "{err}");
}

#[test]
fn guard_exit_code() {
    let out = wronsk(&["--guard", "10", "verify", "--d", "2", "--outer", "1,x,y", "--inner", "1,x,y"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn random_mode_is_reproducible_and_never_certifying() {
    let args = [
        "--json", "--seed", "7", "verify", "--d", "2", "--outer", "1,x,y", "--inner", "1,x,y,xx", "--random", "--trials",
        "5",
    ];
    let (a, b) = (wronsk(&args), wronsk(&args));
    assert_eq!(a.status.code(), Some(0));
    let (ra, rb) = (&reports(&a)[0], &reports(&b)[0]);
    assert_eq!(ra.mode, Mode::Random);
    assert!(!ra.certifying);
    assert_eq!(ra.parameters.seed, Some(7));
    assert_eq!(ra.parameters.trials, Some(5));
    assert_eq!((ra.verdict, ra.tuples_checked), (rb.verdict, rb.tuples_checked));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(wronsk(&[]).status.code(), Some(1));
    assert_eq!(wronsk(&["verify", "--d", "2"]).status.code(), Some(1));
    assert_eq!(wronsk(&["verify", "--d", "2", "--outer", "1,q", "--inner", "1,x,y"]).status.code(), Some(1));
    assert_eq!(wronsk(&["--help"]).status.code(), Some(0));
}

#[test]
fn counterexample_group_reports() {
    let out = wronsk(&["--json", "paper-suite", "--only", "counterexample"]);
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    assert_eq!(rs.len(), 2);
    assert_eq!(rs[0].verdict, Verdict::Nonzero);
    assert_eq!(rs[0].expected, Some(Verdict::Nonzero));
    assert_eq!(rs[1].verdict, Verdict::Zero);
}

#[test]
fn peano_cases() {
    for case in ["1d", "2d"] {
        let out = wronsk(&["--json", "peano", "--case", case]);
        assert_eq!(out.status.code(), Some(0));
        let r = &reports(&out)[0];
        assert_eq!(r.mode, Mode::Evaluate);
        assert!(r.evaluations.iter().all(|e| e.value == "0"));
    }
}
