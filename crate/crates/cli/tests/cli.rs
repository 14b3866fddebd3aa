//! End-to-end tests of the binary: determinism, report schema, exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn pqlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn gen_is_deterministic() {
    let a = pqlab(&["gen", "--kind", "crossing-segments", "--n", "6", "--seed", "1"]);
    let b = pqlab(&["gen", "--kind", "crossing-segments", "--n", "6", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same spec must emit identical files");
    let c = pqlab(&["gen", "--kind", "crossing-segments", "--n", "6", "--seed", "2"]);
    assert_ne!(a.stdout, c.stdout, "different seeds must differ");
}

#[test]
fn pierce_exact_on_segments_plus_boxes() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    let out = pqlab(&[
        "gen",
        "--kind",
        "segments-plus-boxes",
        "--p",
        "4",
        "--q",
        "3",
        "--seed",
        "1",
        "--out",
        fam.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = pqlab(&["pierce", "--input", fam.to_str().unwrap(), "--method", "exact"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["piercing"]["size"], 2);
    assert_eq!(v["result"]["piercing"]["certificate"].as_object().unwrap().len(), 4);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn bounds_regimes() {
    let out = pqlab(&["bounds", "--p", "7", "--q", "5", "--d", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["regime"], "HD_TIGHT");
    assert_eq!(v["result"]["upper_exact"], 3);
    assert_eq!(v["result"]["lower"], 3);

    let out = pqlab(&["bounds", "--p", "4", "--q", "3", "--d", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["regime"], "GENERAL_A");
    assert_eq!(v["result"]["exponent_a"], "4/1");
    assert!(v["result"]["notes"]
        .as_str()
        .unwrap()
        .contains("3 <= HD_2(4,3) <= 13"));
}

#[test]
fn pq_check_exit_codes_follow_the_decision() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    pqlab(&[
        "gen",
        "--kind",
        "disjoint",
        "--n",
        "4",
        "--seed",
        "0",
        "--out",
        fam.to_str().unwrap(),
    ]);
    // violated property: report still emitted, exit code 1
    let out = pqlab(&["pq-check", "--input", fam.to_str().unwrap(), "--p", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["holds"], false);
    assert_eq!(v["result"]["counterexample"], serde_json::json!([0, 1, 2]));

    let nest = dir.path().join("nest.json");
    pqlab(&[
        "gen",
        "--kind",
        "concentric",
        "--n",
        "4",
        "--seed",
        "0",
        "--out",
        nest.to_str().unwrap(),
    ]);
    let out = pqlab(&["pq-check", "--input", nest.to_str().unwrap(), "--p", "3", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["holds"], true);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"version\": \"pqfam/1\", \"bodies\": [[[\"1/0\",\"2\"]]]}").unwrap();
    let out = pqlab(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("body 0"), "diagnostic names the field: {msg}");

    let missing = dir.path().join("missing.json");
    let out = pqlab(&["analyze", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    pqlab(&[
        "gen",
        "--kind",
        "disjoint",
        "--n",
        "12",
        "--seed",
        "0",
        "--out",
        fam.to_str().unwrap(),
    ]);
    let out = pqlab(&[
        "pq-check",
        "--input",
        fam.to_str().unwrap(),
        "--p",
        "6",
        "--q",
        "2",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn net_subcommand_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    pqlab(&[
        "gen",
        "--kind",
        "grid-points",
        "--side",
        "3",
        "--support",
        "9",
        "--max-weight",
        "1",
        "--seed",
        "1",
        "--out",
        pts.to_str().unwrap(),
    ]);
    let out = pqlab(&["net", "--input", pts.to_str().unwrap(), "--eps", "1/3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn csv_format_flattens_the_report() {
    let out = pqlab(&["--format", "csv", "bounds", "--p", "7", "--q", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("result.regime,HD_TIGHT\n"));
    assert!(text.contains("result.upper_exact,3\n"));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    pqlab(&[
        "gen",
        "--kind",
        "disc-polygons",
        "--n",
        "7",
        "--seed",
        "5",
        "--out",
        fam.to_str().unwrap(),
    ]);
    let one = pqlab(&[
        "maxclique",
        "--input",
        fam.to_str().unwrap(),
        "--exact",
        "--threads",
        "1",
    ]);
    let four = pqlab(&[
        "maxclique",
        "--input",
        fam.to_str().unwrap(),
        "--exact",
        "--threads",
        "4",
    ]);
    assert_eq!(stdout_json(&one)["result"], stdout_json(&four)["result"]);
}

#[test]
fn family_file_round_trips_through_gen_and_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    pqlab(&[
        "gen",
        "--kind",
        "random-polygons",
        "--n",
        "5",
        "--seed",
        "7",
        "--out",
        fam.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&fam).unwrap();
    let parsed = pqlab::fileformat::FamilyFile::parse(&text).unwrap();
    let family = parsed.to_family().unwrap();
    let emitted = pqlab::fileformat::FamilyFile::from_family(
        &family,
        parsed.metadata.as_ref().and_then(|m| m.generator.clone()),
    );
    assert_eq!(emitted, parsed, "parse then emit is the identity");
    assert!(Path::new(&fam).exists());
}

#[test]
fn union_and_dichotomy_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    pqlab(&[
        "gen",
        "--kind",
        "crossing-segments",
        "--n",
        "4",
        "--seed",
        "1",
        "--out",
        fam.to_str().unwrap(),
    ]);
    let out = pqlab(&["union", "--input", fam.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["vertex_count"], 6); // C(4,2) crossings

    let out = pqlab(&["union", "--input", fam.to_str().unwrap(), "--k", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["holds"], false);

    // nested squares satisfy (5,4); with q' = 3 > p' = 2 the smaller
    // property is unsatisfiable, so the split branch is forced
    let nest = dir.path().join("nest.json");
    pqlab(&[
        "gen",
        "--kind",
        "concentric",
        "--n",
        "5",
        "--seed",
        "0",
        "--out",
        nest.to_str().unwrap(),
    ]);
    let out = pqlab(&[
        "dichotomy",
        "--input",
        nest.to_str().unwrap(),
        "--p",
        "5",
        "--q",
        "4",
        "--p-small",
        "2",
        "--q-small",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["branch"], "split");
    assert_eq!(v["result"]["removed"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["residual_p"], 3);
    assert_eq!(v["result"]["residual_q"], 2);
}
