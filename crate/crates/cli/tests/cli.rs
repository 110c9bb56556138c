use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rapidity"))
        .args(args)
        .env_remove("RAPIDITY_FORMAT")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn compose_examples() {
    assert_eq!(json(&["compose", "0.5", "0.5"])["beta"], 0.8);
    assert_eq!(json(&["compose", "0.3", "0", "0"])["beta"], 0.3);
    let w = json(&["compose", "-0.5", "0.5"]);
    assert_eq!(w["beta"], 0.0);
    let plain = stdout(&run(&["compose", "0.5", "0.5"]));
    assert!(plain.contains("beta     0.8"), "{plain}");
}

#[test]
fn compose_in_physical_units() {
    let w = json(&["--c", "300000", "compose", "200000", "200000"]);
    assert!((w["value"].as_f64().unwrap() - 276_923.076_923_076_9).abs() < 1e-6);
    assert!((w["beta"].as_f64().unwrap() - 12.0 / 13.0).abs() < 1e-15);
    // --natural keeps literals as multiples of c
    let w = json(&["--c", "10", "--natural", "compose", "0.5", "0.5"]);
    assert_eq!(w["value"], 8.0);
}

#[test]
fn compose_routes_agree_in_the_interior() {
    for route in ["direct", "naive", "rapidity"] {
        let w = json(&["compose", "0.5", "0.5", "0.5", "--route", route]);
        assert!((w["beta"].as_f64().unwrap() - 13.0 / 14.0).abs() < 1e-15, "{route}");
    }
    assert_eq!(run(&["compose", "0.5", "0.5", "--route", "bogus"]).status.code(), Some(2));
}

#[test]
fn compose_domain_errors() {
    for args in [&["compose", "1", "0.5"][..], &["compose", "0.5"], &["compose", "abc", "0.1"]] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let out = run(&["compose", "--extended", "1", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1, -1)"));
    assert_eq!(json(&["compose", "--extended", "1", "0.3"])["beta"], 1.0);
}

#[test]
fn rapidity_examples() {
    let x = json(&["rapidity", "to", "0.5", "--k", "0.5"])["rapidity"].as_f64().unwrap();
    assert!((x - 0.549_306_144_334_054_8).abs() < 1e-15);
    assert_eq!(stdout(&run(&["rapidity", "to", "0.5", "--k", "0.5"])).trim(), "0.549306");
    assert_eq!(json(&["rapidity", "from", "0"])["beta"], 0.0);
    assert_eq!(run(&["rapidity", "to", "1"]).status.code(), Some(2));
    let back = json(&["rapidity", "from", "-1.0986122886681098"])["beta"].as_f64().unwrap();
    assert!((back + 0.5).abs() < 1e-15);
}

#[test]
fn chain_formats() {
    let csv = stdout(&run(&["chain", "0.1", "10", "--format", "csv"]));
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "step,sr_beta,newton_value,rapidity");

    let rows = json(&["chain", "0.1", "10"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    for (row, line) in rows.iter().zip(&lines[1..]) {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(row["sr_beta"].as_f64().unwrap(), fields[1]);
        assert_eq!(row["newton_value"].as_f64().unwrap(), fields[2]);
    }
    for bad in [&["chain", "1.5", "10"][..], &["chain", "0.1", "0"], &["chain", "-0.1", "3"]] {
        assert_eq!(run(bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn verify_reports() {
    let reports = json(&["verify", "commutativity", "--count", "500"]);
    assert_eq!(reports[0]["max_abs_violation"], 0.0);
    let reports = json(&["verify", "all", "--count", "500", "--seed", "7"]);
    assert_eq!(reports.as_array().unwrap().len(), 7);
    let reports = json(&["verify", "stability"]);
    assert_eq!(reports[0]["law_name"], "stability");
    assert_eq!(run(&["verify", "closure"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "all", "--count", "0"]).status.code(), Some(2));
}

#[test]
fn failing_law_still_prints_reports() {
    let out = run(&["verify", "associativity", "--count", "100", "--tol", "1e-300", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let reports: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports[0]["passed"], false);
}

#[test]
fn format_env_default_and_flag_precedence() {
    let with_env = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_rapidity"))
            .args(args)
            .env("RAPIDITY_FORMAT", "json")
            .output()
            .unwrap()
    };
    let out = with_env(&["rapidity", "to", "0.5"]);
    assert!(stdout(&out).starts_with("{\"rapidity\":"));
    let out = with_env(&["rapidity", "to", "0.5", "--format", "csv"]);
    assert!(stdout(&out).starts_with("rapidity\n"));
}
