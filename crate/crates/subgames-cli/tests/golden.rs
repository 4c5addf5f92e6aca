//! Golden-run suite for the binary: output shapes, exit-status contract,
//! schema validation, and digest reproducibility.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subgames"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> (serde_json::Value, Output) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json from {args:?}: {e}\n{}", stdout(&out)));
    (v, out)
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/result.schema.json");
    let doc: serde_json::Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap()
}

#[test]
fn period_reports_the_paper_certificate() {
    let (v, out) = json(&["period", "2,5,7"]);
    assert!(out.status.success());
    assert_eq!(v["preperiod"], 0);
    assert_eq!(v["period"], 22);
    assert_eq!(v["certified"], true);
    assert_eq!(v["command"], "period");
}

#[test]
fn outcomes_text_matches_paper_table() {
    let out = run(&["outcomes", "2,5", "--horizon", "17"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "PPNNPNNPPNNPNNPPN");
}

#[test]
fn fes_arithmetic_periodicity() {
    let (v, out) = json(&["fes", "!2", "--horizon", "100"]);
    assert!(out.status.success());
    let ap = &v["arithmetic_periodicity"];
    assert_eq!(ap["preperiod"], 0);
    assert_eq!(ap["period"], 4);
    assert_eq!(ap["saltus"], 2);
}

#[test]
fn seed_period_miklos_post_instance() {
    let (v, out) = json(&["seed-period", "2,7,16", "--seed", "NNNNNNNNNPNNNNNN"]);
    assert!(out.status.success());
    assert_eq!(v["preperiod"], 0);
    assert_eq!(v["period"], 9);
    assert_eq!(v["certified"], true);
}

#[test]
fn exit_codes() {
    // 1: input errors, reported on stderr.
    let out = run(&["outcomes", "2,2,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
    assert!(out.stdout.is_empty());

    // 2: computed but inconclusive (horizon too small to certify).
    let out = run(&["period", "2,5,7", "--horizon", "10"]);
    assert_eq!(out.status.code(), Some(2));

    // 0: success.
    let out = run(&["period", "2,5,7"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_outputs_validate_against_the_shipped_schema() {
    let schema = schema();
    let cases: Vec<Vec<&str>> = vec![
        vec!["period", "2,5,7"],
        vec!["outcomes", "2,5", "--horizon", "17"],
        vec!["grundy", "1,2", "--horizon", "9"],
        vec!["misere", "2,3", "--horizon", "6"],
        vec!["seed-period", "2,7,16", "--seed", "NNNNNNNNNPNNNNNN"],
        vec!["expand", "3,5", "--bound", "25"],
        vec!["adjoin-check", "2,5,7"],
        vec!["bipartite", "1,3,5"],
        vec!["fes", "!2,4", "--horizon", "2000"],
        vec!["fes-conjecture", "sleator-slusky", "-a", "2", "-b", "7"],
        vec!["family", "ab4", "--range", "1..2"],
        vec!["records", "--range", "5..6", "-k", "2"],
        vec!["classify3", "--s3", "7"],
        vec!["zhang", "1,2", "--modulus", "3", "--residue", "1", "--range", "7..16"],
        vec!["grid2d", "(1,0),(0,1)", "--width", "16", "--height", "16"],
        vec!["render", "(1,1)", "--width", "8", "--height", "8"],
    ];
    for args in cases {
        let (v, _) = json(&args);
        let result = schema.validate(&v);
        if let Err(errors) = result {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("schema violation for {args:?}: {msgs:?}");
        }
    }
}

#[test]
fn digests_are_reproducible_across_runs_and_thread_counts() {
    let (a, _) = json(&["grid2d", "(2,6),(3,3),(6,1),(19,6)", "--width", "300", "--height", "200"]);
    let (b, _) = json(&[
        "grid2d", "(2,6),(3,3),(6,1),(19,6)", "--width", "300", "--height", "200", "--threads", "1",
    ]);
    let (c, _) = json(&[
        "grid2d", "(2,6),(3,3),(6,1),(19,6)", "--width", "300", "--height", "200", "--threads", "7",
    ]);
    assert_eq!(a["digest"], b["digest"]);
    assert_eq!(a["digest"], c["digest"]);

    let (a, _) = json(&["records", "--range", "6..7", "-k", "3"]);
    let (b, _) = json(&["records", "--range", "6..7", "-k", "3", "--threads", "3"]);
    assert_eq!(a["rows"], b["rows"]);
}

#[test]
fn render_writes_valid_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.pgm");
    let out = run(&[
        "render",
        "(1,0),(0,1)",
        "--width",
        "4",
        "--height",
        "2",
        "--format",
        "pgm",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P5\n4 2\n255\n"));
    assert_eq!(bytes.len(), 11 + 8);
    // Top row first (origin lower-left): row y=1 is NPNP, row y=0 is PNPN.
    assert_eq!(&bytes[11..], &[255, 0, 255, 0, 0, 255, 0, 255]);
}

#[test]
fn csv_has_stable_columns() {
    let out = run(&["period", "2,5", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "ruleset,kind,preperiod,period,certified,horizon"
    );
    assert!(lines.next().unwrap().starts_with("\"2,5\",outcome,0,7,true"));
}

#[test]
fn misere_reports_seed_divergence() {
    let (v, out) = json(&["misere", "2,3", "--horizon", "6"]);
    assert!(out.status.success());
    assert_eq!(v["symbols"], "NNPPNN");
    assert_eq!(v["seed_divergence"], 0);
}

#[test]
fn family_preset_and_affine_text() {
    let out = run(&["family", "5n-2,5n+3,10n+2", "--range", "2..2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("8,13,22"));

    let out = run(&["family", "preperiod", "--range", "2..3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(179,5)"), "{text}");
    assert!(text.contains("(404,5)"), "{text}");
}
