use std::process::{Command, Output};

use affine_classes_cli::{read_csv, Method, OutputRecord};

fn affcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affcc"))
        .args(args)
        .env_remove("AFFCC_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn values(records: &[OutputRecord]) -> Vec<&str> {
    records.iter().map(|r| r.value.as_str()).collect()
}

#[test]
fn agl_csv_table() {
    let o = affcc(&["table", "--family", "agl", "--q", "2", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("family,char,n,dim,q,method,value,status\n"));
    let records = read_csv(&text).unwrap();
    assert_eq!(values(&records), ["2", "5", "11", "25", "52"]);
}

#[test]
fn asp_and_ao_minus_tables() {
    let o = affcc(&["table", "--family", "asp", "--q", "3", "--n-max", "2"]);
    assert_eq!(values(&read_csv(&stdout(&o)).unwrap()), ["10", "58"]);
    let o = affcc(&["table", "--family", "ao-minus", "--q", "2", "--n-max", "3"]);
    let records = read_csv(&stdout(&o)).unwrap();
    assert_eq!(values(&records), ["5", "18", "65"]);
    assert_eq!(records.iter().map(|r| r.dim).collect::<Vec<_>>(), [2, 4, 6]);
}

#[test]
fn json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("agu.json");
    let args = [
        "table",
        "--family",
        "agu",
        "--q",
        "3",
        "--n-max",
        "3",
        "--method",
        "closed-form,recursion,orbit-assembly",
        "--format",
        "json",
    ];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(affcc(&with_out).status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: Vec<OutputRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.len(), 9);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    assert!(parsed
        .iter()
        .filter(|r| r.method != Method::ClosedForm)
        .all(|r| r.status == "agree"));

    let csv = stdout(&affcc(&args[..args.len() - 2]));
    assert_eq!(read_csv(&csv).unwrap(), parsed);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "table",
        "--family",
        "asp",
        "--symbolic-q",
        "--n-max",
        "4",
        "--format",
        "md",
    ];
    let a = affcc(&args);
    let b = affcc(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("| asp | odd | 1 | 2 | symbolic | closed-form | 2q + 4 | ok |"));
}

#[test]
fn oracle_asu_3_2() {
    let o = affcc(&["oracle", "--family", "asu", "--q", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k = 24"));
    assert!(stdout(&o).contains("sum of o(C) = 24"));
}

#[test]
fn oracle_agu_matches_series() {
    let series = read_csv(&stdout(&affcc(&[
        "table", "--family", "agu", "--q", "2", "--n-max", "2",
    ])))
    .unwrap();
    let o = affcc(&[
        "oracle", "--family", "agu", "--q", "2", "--n", "2", "--json",
    ]);
    let run: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(run["k"].to_string(), series[1].value);
}

#[test]
fn cap_exceeded_exit_code() {
    let o = affcc(&[
        "oracle", "--family", "agl", "--q", "3", "--n", "2", "--cap", "100",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_affcc"))
        .args(["oracle", "--family", "agl", "--q", "3", "--n", "2"])
        .env("AFFCC_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["table", "--family", "nope", "--q", "2"][..],
        &["table", "--family", "asp", "--q", "6"],
        &["table", "--family", "asp", "--q", "3", "--char", "even"],
        &["verify", "--suite", "everything"],
        &["oracle", "--family", "bsp", "--q", "2", "--n", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(affcc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn config_sets_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("affcc.toml");
    std::fs::write(&path, "order = 3\ncap = 100\n").unwrap();
    let cfg = path.to_str().unwrap();
    let o = affcc(&["--config", cfg, "table", "--family", "agl", "--q", "3"]);
    assert_eq!(read_csv(&stdout(&o)).unwrap().len(), 3);
    let o = affcc(&[
        "--config", cfg, "oracle", "--family", "agl", "--q", "3", "--n", "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(&path, "colour = 1\n").unwrap();
    assert_eq!(affcc(&["--config", cfg, "bounds"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = affcc(&["verify", "--suite", "paper-values"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = affcc(&["verify", "--suite", "identities", "--json"]);
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports[0]["suite"], "identities");
    assert!(reports[0]["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn bounds_grid_has_no_violations() {
    let o = affcc(&["bounds", "--q-set", "2,3,4,5", "--n-max", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn constant_certificates_report_failures() {
    let o = affcc(&["bounds", "--q-set", "3", "--n-max", "2", "--constants"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL constant 111.6 at q=2"));
    assert!(text.contains("PASS constant 2.4"));
}
