use std::path::Path;
use std::process::{Command, Output};

use clap::Parser;

use reesse_cli::{Cli, Command as Verb};
use reesse_core::fixtures;
use reesse_core::keys::{PrivateKey, PublicKey};

fn reesse(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reesse"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn parses_the_documented_command_lines() {
    let cli = Cli::try_parse_from([
        "reesse", "keygen", "--n", "6", "--rho", "17", "--omega", "scaled:1", "--seed", "42", "--out", "k.json",
    ])
    .unwrap();
    assert!(matches!(cli.command, Verb::Keygen(ref k) if k.n == 6 && k.seed == 42));
    let cli = Cli::try_parse_from(["reesse", "reproduce", "--example", "table2"]).unwrap();
    assert!(matches!(cli.command, Verb::Reproduce(ref r) if r.example == "table2"));
    assert!(Cli::try_parse_from(["reesse", "attack"]).is_err());
    assert!(
        Cli::try_parse_from(["reesse", "keygen", "--n", "6", "--rho", "17"]).is_err(),
        "seed is mandatory"
    );
    assert!(
        Cli::try_parse_from(["reesse", "study", "fp", "--n", "6", "--rho", "17"]).is_err(),
        "seed is mandatory"
    );
    assert!(Cli::try_parse_from(["reesse", "reproduce", "--example", "1", "--bogus"]).is_err());
    assert!(
        Cli::try_parse_from(["reesse", "keygen", "--n", "6", "--rho", "17", "--seed", "1", "--omega", "cubic:1"])
            .is_err()
    );
}

#[test]
fn keygen_writes_consistent_files_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "keygen",
        "--n",
        "8",
        "--rho",
        "43",
        "--omega",
        "scaled:1",
        "--seed",
        "42",
        "--out",
        "k.json",
        "--pub-out",
        "p.json",
    ];
    let out = reesse(&args, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let private = PrivateKey::from_json(&std::fs::read_to_string(dir.path().join("k.json")).unwrap()).unwrap();
    let public = PublicKey::from_json(&std::fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    assert_eq!(private.public_key(), public);

    let first = std::fs::read(dir.path().join("k.json")).unwrap();
    assert!(reesse(&args, dir.path()).status.success());
    assert_eq!(first, std::fs::read(dir.path().join("k.json")).unwrap());
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 2, "no temporary files remain");
}

#[test]
fn keygen_rejects_bad_parameters_as_domain_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = reesse(
        &[
            "keygen",
            "--n",
            "6",
            "--rho",
            "17",
            "--omega",
            "shifted:0",
            "--seed",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let out = reesse(
        &["keygen", "--n", "6", "--rho", "17", "--delta", "5", "--seed", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn attack_on_the_published_key() {
    let dir = tempfile::tempdir().unwrap();
    let public = fixtures::example5_private().public_key();
    std::fs::write(dir.path().join("example5_pub.json"), public.to_json()).unwrap();
    let out = reesse(
        &["attack", "--pub", "example5_pub.json", "--filter", "jump"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let delta: f64 = text
        .strip_prefix("Delta = ")
        .and_then(|t| t.split(',').next())
        .and_then(|d| d.parse().ok())
        .unwrap();
    assert!((delta - 506.0).abs() <= 1.0);

    let out = reesse(
        &[
            "attack",
            "--pub",
            "example5_pub.json",
            "--max-a-rounding",
            "ceil",
            "--format",
            "table",
        ],
        dir.path(),
    );
    assert!(stdout(&out).contains("A_1 = 437 | (10, 6, 1), (6, 10, 1)\n"));

    let json_args = [
        "attack",
        "--pub",
        "example5_pub.json",
        "--format",
        "json",
        "--out",
        "r.json",
    ];
    assert!(reesse(&json_args, dir.path()).status.success());
    let first = std::fs::read(dir.path().join("r.json")).unwrap();
    assert!(reesse(&json_args, dir.path()).status.success());
    assert_eq!(first, std::fs::read(dir.path().join("r.json")).unwrap());
}

#[test]
fn attack_io_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = reesse(&["attack", "--pub", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"n": "6", "M": "11", "rho": "17", "C": ["1"], "extra": 1}"#,
    )
    .unwrap();
    assert_eq!(
        reesse(&["attack", "--pub", "bad.json"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(reesse(&["attack"], dir.path()).status.code(), Some(2));
}

#[test]
fn reproduce_reports_the_false_positive() {
    let dir = tempfile::tempdir().unwrap();
    let out = reesse(&["reproduce", "--example", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("scan proposes A_5 = 11"));
    assert!(text.contains("overall: PASS"));

    let out = reesse(&["reproduce", "--example", "all", "--format", "json"], dir.path());
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 6);

    assert_eq!(
        reesse(&["reproduce", "--example", "9"], dir.path()).status.code(),
        Some(1)
    );
}

#[test]
fn omega_tools() {
    let dir = tempfile::tempdir().unwrap();
    let out = reesse(
        &["omega-check", "--omega", "scaled:1", "--n", "6", "--mode", "repetition"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("5 + 5 = 10"));

    assert!(reesse(
        &["omega-gen", "--n", "8", "--omega", "odd", "--out", "o.json"],
        dir.path()
    )
    .status
    .success());
    let out = reesse(&["omega-check", "--file", "o.json", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(reesse(
        &[
            "omega-check",
            "--omega",
            "shifted:6",
            "--n",
            "10",
            "--mode",
            "repetition"
        ],
        dir.path()
    )
    .status
    .success());
}

#[test]
fn studies_are_reproducible_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "study", "fp", "--n", "6", "--rho", "17", "--trials", "30", "--seed", "3", "--format", "json",
    ];
    let a = reesse(&args, dir.path());
    let b = reesse(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let out = reesse(
        &[
            "study",
            "completeness",
            "--n",
            "7",
            "--rho",
            "29",
            "--trials",
            "20",
            "--seed",
            "3",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("completeness (bound only)"));

    let out = reesse(
        &[
            "study",
            "completeness",
            "--n",
            "8",
            "--rho",
            "43",
            "--omega",
            "shifted:4",
            "--seed",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let out = reesse(
        &["study", "fp", "--n", "6", "--rho", "17", "--trials", "0", "--seed", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}
