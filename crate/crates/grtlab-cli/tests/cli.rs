//! End-to-end checks of the binary: exit-code contract, output shapes,
//! and the documented example invocations.

use std::process::{Command, Output};

fn grtlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grtlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

#[test]
fn hexagon_projection_of_degree_two_basis_element_is_zero() {
    let out = grtlab(&["project", "hexagon", "[x,y]", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0");
}

#[test]
fn sigma3_is_pentagon_flat() {
    let out = grtlab(&[
        "residual",
        "pentagon",
        "[x,[x,y]] - [y,[y,x]]",
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0");
}

#[test]
fn z3_hexagon_lab_on_s3() {
    let out = grtlab(&["lab", "group", "z3hexagon", "--group", "S3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("PASS"));
}

#[test]
fn nonzero_residual_exits_one_and_prints_the_counterexample() {
    let out = grtlab(&["residual", "hexagon", "[x,y]", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "3 [x,y]");

    // pentagon residual of a generator is -t12
    let out = grtlab(&["residual", "pentagon", "x", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "-t12");
}

#[test]
fn eq3_residual_is_not_truncated_away() {
    // hexagon-flat but not mass-shell-flat: H applied to a generator word
    let out = grtlab(&["residual", "eq3", "[x,[x,y]]", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_ne!(stdout(&out), "0");
    let out = grtlab(&[
        "residual",
        "eq3",
        "[x,[x,y]] - [y,[y,x]]",
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0");
}

#[test]
fn usage_errors_exit_two() {
    // syntax error in the expression
    let out = grtlab(&["project", "hexagon", "[x,", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown proposition id
    let out = grtlab(&["lab", "group", "prop-unknown"]);
    assert_eq!(out.status.code(), Some(2));
    // bad group spec
    let out = grtlab(&["lab", "group", "z3hexagon", "--group", "Q8"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand (clap)
    let out = grtlab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // degree overflow in parse
    let out = grtlab(&["lie", "eval", "[x,[x,y]]", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lie_eval_normalizes_and_reports_json() {
    let out = grtlab(&[
        "lie",
        "eval",
        "1/3 [y,x]",
        "--max-degree",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["series"]["alphabet"], serde_json::json!(["x", "y"]));
    assert_eq!(v["series"]["max_degree"], 2);
    assert_eq!(v["series"]["terms"][0]["word"], "xy");
    assert_eq!(v["series"]["terms"][0]["coeff"], "-1/3");
}

#[test]
fn dk_dims_for_t3() {
    let out = grtlab(&[
        "dk", "dims", "-n", "3", "--max-degree", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimensions"], serde_json::json!([3, 1, 2]));
    assert_eq!(v["passed"], true);
}

#[test]
fn ihara_of_generators_vanishes() {
    let out = grtlab(&["ihara", "x", "y", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0");
}

#[test]
fn custom_alphabet_eval() {
    let out = grtlab(&[
        "lie",
        "eval",
        "[t12, t13] + [t12, t23]",
        "--alphabet",
        "t12,t13,t23",
        "--max-degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[t12,t13] + [t12,t23]");
}

#[test]
fn torsor_from_json_table() {
    // the Z2 torsor as an explicit JSON table
    let json = r#"{"labels": ["0", "1"], "table": [0, 1, 1, 0, 1, 0, 0, 1]}"#;
    let dir = std::env::temp_dir().join("grtlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z2-torsor.json");
    std::fs::write(&path, json).unwrap();
    let out = grtlab(&[
        "lab",
        "torsor",
        "iota",
        "--torsor-json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("PASS"));

    // a non-torsor table is a usage error
    let bad = dir.join("bad-torsor.json");
    std::fs::write(&bad, r#"{"labels": ["0", "1"], "table": [0,0,0,0,0,0,0,0]}"#).unwrap();
    let out = grtlab(&["lab", "torsor", "iota", "--torsor-json", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jobs_flag_does_not_change_reports() {
    let a = grtlab(&[
        "fivecycle", "fp", "--prime", "13", "--format", "json", "--jobs", "1",
    ]);
    let b = grtlab(&[
        "fivecycle", "fp", "--prime", "13", "--format", "json", "--jobs", "4",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
