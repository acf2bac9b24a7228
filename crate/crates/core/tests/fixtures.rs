use std::path::PathBuf;

use dspkit::cli::{self, Problem};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["dspkit"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, value)
}

fn run_fixture(command: &str, name: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(&format!("fixtures/{name}.json"));
    let mut args = vec![command];
    args.extend_from_slice(extra);
    args.push(&path);
    run(&args)
}

#[test]
fn invariants_fixtures() {
    let (code, r) = run_fixture("invariants", "size_eleven", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["classes"][0]["z"], 23);
    assert_eq!(r["classes"][0]["d"], 98);
    assert_eq!(r["classes"][0]["r"], 8);
    let (_, r) = run_fixture("invariants", "extra_case", &[]);
    assert_eq!(r["rigidity_index"], 2);
}

#[test]
fn malformed_blocks_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"classes":[{"blocks":[[0]]},{"blocks":[[1]]}]}"#).unwrap();
    let (code, r) = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "invalid_partition");
}

#[test]
fn decide_fixtures() {
    let (code, r) = run_fixture("decide", "hypergeometric_n2", &["--trace"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "solvable");
    assert_eq!(r["terminal_size"], 1);
    let (_, r) = run_fixture("decide", "pair_n2", &[]);
    assert_eq!(r["verdict"], "not_solvable");
    let (_, r) = run_fixture("decide", "hypergeometric_n3", &["--trace"]);
    assert_eq!(r["verdict"], "solvable");
    assert_eq!(r["trace"]["steps"].as_array().unwrap().len(), 2);
    let (code, r) = run_fixture("decide", "special_a_k2", &["--weak"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "not_applicable");
}

#[test]
fn generic_fixtures() {
    let (code, r) = run_fixture("generic", "example_generic", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["generic"], true);
    assert_eq!(r["gcd_reduction"]["divisors"][0]["divisor"], 2);
    assert_eq!(r["gcd_reduction"]["divisors"][0]["product"], "{mod: 1, arg: 1/2}");
    assert_eq!(r["gcd_reduction"]["divisors"][0]["primitive"], true);
    let (_, r) = run_fixture("generic", "example_nongeneric", &[]);
    assert_eq!(r["generic"], false);
    assert_eq!(r["witness"]["k"], 2);
    let (code, r) = run_fixture("generic", "hypergeometric_n2", &[]);
    assert_eq!(code, 2);
    assert!(r["error"]["message"].as_str().unwrap().contains("generic needs eigenvalues"));
}

#[test]
fn classify_fixtures() {
    let (_, r) = run_fixture("classify", "special_d_k2", &[]);
    assert_eq!(r["special_case"]["kind"], "special_d");
    assert_eq!(r["unipotent_nilpotent"]["weak_dsp"], "not_solvable");
    let (_, r) = run_fixture("classify", "almost_d_k2", &[]);
    assert_eq!(r["special_case"]["kind"], "almost_d");
    let (_, r) = run_fixture("classify", "almost_b_k2", &[]);
    assert_eq!(r["unipotent_nilpotent"]["dsp"], "unknown");
    let (_, r) = run_fixture("classify", "good_n9", &[]);
    assert_eq!(r["good"], true);
    assert_eq!(r["special_diagonal"], false);
    let (_, r) = run_fixture("classify", "extra_case", &[]);
    assert_eq!(r["rigid_family"], "extra_case");
    let (_, r) = run_fixture("classify", "example_generic", &[]);
    assert_eq!(r["weak_verdict"]["verdict"], "solvable");
    assert!(r.get("unipotent_nilpotent").is_none());
}

#[test]
fn realize_fixtures() {
    let warm = fixture("warm/strata_s1.json");
    let (code, r) = run_fixture("realize", "strata_triple", &["--warm-start", &warm]);
    assert_eq!(code, 0);
    assert_eq!(r["found"], true);
    assert!(r["summary"]["residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(r["summary"]["centralizer_nullity"], 1);
    assert_eq!(r["summary"]["burnside_dim"], 3);
    let (code, r) = run_fixture("realize", "strata_triple", &["--restarts", "5"]);
    assert_eq!(code, 0);
    // 1 + 3 − 4 = 0 forces an invariant line, so nothing found is irreducible.
    assert_eq!(r["found"], true);
    assert_eq!(r["summary"]["irreducible"], false);
}

#[test]
fn realize_without_solution_reports_not_found() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    std::fs::write(
        &path,
        r#"{"classes":[{"blocks":[[1],[1]],"eigenvalues":["1","2"]},{"blocks":[[1],[1]],"eigenvalues":["3","-6"]}]}"#,
    )
    .unwrap();
    let (code, r) = run(&["realize", "--restarts", "2", "--iters", "40", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["found"], false);
}

#[test]
fn enumerate_rigid_examples() {
    let (_, r) = run(&["enumerate-rigid", "--n", "6", "--p", "2", "--with-distinct"]);
    let mut families: Vec<String> =
        r["tuples"].as_array().unwrap().iter().map(|t| t["family"].as_str().unwrap().to_string()).collect();
    families.sort();
    assert_eq!(families, ["even_family", "extra_case", "hypergeometric"]);
    let (_, r) = run(&["enumerate-rigid", "--n", "2", "--p", "2"]);
    assert_eq!(r["count"], 1);
    assert_eq!(r["tuples"][0]["family"], "hypergeometric");
    let (_, r) = run(&["enumerate-rigid", "--n", "1", "--p", "2"]);
    assert_eq!(r["count"], 1);
}

#[test]
fn every_fixture_echo_round_trips() {
    let dir = fixture("fixtures");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let p = Problem::from_json(&text).unwrap();
        assert_eq!(Problem::from_json(&p.echo().to_string()).unwrap(), p, "{}", path.display());
    }
}

#[test]
fn batch_directory_emits_one_line_per_file() {
    let dir = fixture("fixtures");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["dspkit", "invariants", "--jobs", "3", &dir], &mut out, &mut err);
    assert_eq!(code, 0);
    let lines: Vec<Value> =
        String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let files = std::fs::read_dir(fixture("fixtures")).unwrap().count();
    assert_eq!(lines.len(), files);
    let sources: Vec<&str> = lines.iter().map(|l| l["source"].as_str().unwrap()).collect();
    let mut sorted = sources.clone();
    sorted.sort();
    assert_eq!(sources, sorted);
}
