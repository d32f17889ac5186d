use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn code_of(verdict: &str) -> i32 {
    match verdict {
        "pass" => 0,
        "violated" => 1,
        "input-error" => 2,
        "inconclusive" => 3,
        other => panic!("unknown verdict {other}"),
    }
}

/// Runs in-process with `--json`, checks the schema and the exit code.
fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["cxc"];
    argv.extend_from_slice(args);
    argv.push("--json");
    let run = cxc_cli::run(&argv);
    let report: Value = serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", run.stdout));
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}\n{report:#}");
    assert_eq!(run.code, code_of(report["result"]["verdict"].as_str().unwrap()), "{args:?}");
    (run.code, report)
}

fn text(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["cxc"];
    argv.extend_from_slice(args);
    let run = cxc_cli::run(&argv);
    (run.code, run.stdout + &run.stderr)
}

#[test]
fn minset_of_pendant() {
    let (code, r) = json(&["minset", &data("pendant.cxc")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["translation_length"], 1);
    assert_eq!(r["result"]["min_orbits"], serde_json::json!(["a"]));
}

#[test]
fn hexagon_is_not_cat0() {
    let (code, r) = json(&["is-cat0", &data("hexagon.cxc")]);
    assert_eq!(code, 1);
    let triple = r["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .find_map(|w| w.get("median_triple"))
        .expect("median witness");
    assert_eq!(triple["triple"].as_array().unwrap().len(), 3);
    assert_eq!(r["result"]["links_flag"], true);
    assert_eq!(r["result"]["simply_connected"], false);
}

#[test]
fn grid_distance_with_wall_count() {
    let (code, r) = json(&["distance", &data("grid.cxc"), "0", "8"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["distance"], 4);
    assert_eq!(r["result"]["walls_cross_check"]["separating_walls"], 4);
    let (_, out) = text(&["distance", &data("grid.cxc"), "0", "8"]);
    assert!(out.contains("distance: 4"));
    assert!(out.contains("4 separating walls, agrees"));
}

#[test]
fn periodic_distance_carries_certificate() {
    let (code, r) = json(&["distance", &data("pendant.cxc"), "(b,-2)", "b,3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["distance"], 7);
    assert_eq!(r["certificates"][0]["holds"], true);
    assert_eq!(r["result"]["window_cross_check"]["agrees"], true);
}

#[test]
fn classification_fixtures() {
    let (code, r) = json(&["classify", &data("square-rotation.cxc"), "--power-bound", "2"]);
    assert_eq!((code, r["result"]["classification"].as_str()), (0, Some("inversion-detected")));
    assert_eq!(r["result"]["details"]["power"], 2);
    let (code, r) = json(&["classify", &data("square-rotation.cxc"), "--power-bound", "1"]);
    assert_eq!((code, r["result"]["classification"].as_str()), (3, Some("undecided")));
    let (code, r) = json(&["classify", &data("glide.cxc"), "--power-bound", "1"]);
    assert_eq!((code, r["result"]["details"]["power"].as_u64()), (0, Some(1)));
    let (code, r) = json(&["classify", &data("pendant.cxc")]);
    assert_eq!((code, r["result"]["classification"].as_str()), (0, Some("hyperbolic")));
    assert_eq!(r["result"]["axis_labels"], serde_json::json!(["(a,0)", "(a,1)"]));
    let (code, _) = json(&["classify", &data("grid.cxc")]);
    assert_eq!(code, 2);
}

#[test]
fn axis_and_min_verification() {
    let (code, r) = json(&["axis", &data("glide-squared.cxc")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["translation_length"], 2);
    assert_eq!(r["result"]["pass"], true);
    let (code, r) = json(&["verify-min", &data("glide-squared.cxc"), "--loop-samples", "20"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["spread"], 10);
    let (code, r) = json(&["verify-min", &data("pendant.cxc"), "--spread", "3", "--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["spread"], 3);
    let (code, r) = json(&["axis", &data("glide.cxc")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["translation_length"], 2);
    let dir = tempfile::tempdir().unwrap();
    let fixed = dir.path().join("fixed.cxc");
    std::fs::write(&fixed, "cxc 1 periodic\norbit a\npcube e : (a,0) (a,1)\naut shift 0 perm ()\n").unwrap();
    let (code, r) = json(&["axis", fixed.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["hyperbolic"], false);
    assert_eq!(json(&["classify", fixed.to_str().unwrap()]).1["result"]["classification"], "elliptic");
    let (code, _) = json(&["axis", &data("grid.cxc")]);
    assert_eq!(code, 2);
}

#[test]
fn walls_report_witnesses() {
    let (code, r) = json(&["walls", &data("flipped-strip.cxc")]);
    assert_eq!(code, 1);
    assert!(r["witnesses"].as_array().unwrap().iter().any(|w| !w["self_intersection"].is_null()));
    let (code, r) = json(&["walls", &data("ladder.cxc")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["wall_classes"].as_array().unwrap().len(), 2);
    assert_eq!(json(&["walls", &data("grid.cxc")]).0, 0);
}

#[test]
fn loops_and_links() {
    let (code, r) = json(&["contract-loop", &data("grid.cxc"), "0", "1", "2", "5", "8", "7", "6", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["contracted"], true);
    assert_eq!(r["certificates"].as_array().unwrap().len(), 1);
    let (code, _) = json(&["contract-loop", &data("hexagon.cxc"), "0", "1", "2", "3", "4", "5"]);
    assert_eq!(code, 3);
    let (code, _) = json(&["contract-loop", &data("grid.cxc"), "0", "8"]);
    assert_eq!(code, 2);
    let (code, r) = json(&["contract-loop", &data("ladder.cxc"), "(a,0)", "(a,1)", "(b,1)", "(b,0)"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["length"], 4);
    let (code, _) = json(&["links", &data("flipped-strip.cxc")]);
    assert_eq!(code, 0);
    assert_eq!(json(&["is-cat0", &data("ladder.cxc"), "--loop-samples", "10"]).0, 0);
}

#[test]
fn validation_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cxc");
    std::fs::write(&bad, "cxc 1 finite\ncube s : 0 1 2 3\ncube t : 0 3 4 5\n").unwrap();
    let (code, r) = json(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(r["witnesses"][0]["error"].as_str().unwrap().contains("[\"s\", \"t\"]"));
    let (code, _) = json(&["distance", bad.to_str().unwrap(), "0", "1"]);
    assert_eq!(code, 2);

    std::fs::write(&bad, "cxc 1 finite\ncube q : 0 1 2\n").unwrap();
    let (code, r) = json(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["result"]["error"].as_str().unwrap().contains(":2:1:"));

    std::fs::write(&bad, "cxc 1 finite\ncube q : 0 1 2 3\naut perm (0 3)\n").unwrap();
    let (code, r) = json(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["automorphism"], true);
    std::fs::write(&bad, "cxc 1 finite\ncube q : 0 1 2 3\naut perm (0 1)\n").unwrap();
    assert_eq!(json(&["validate", bad.to_str().unwrap()]).0, 1);

    assert_eq!(json(&["validate", &data("missing.cxc")]).0, 2);
    assert_eq!(json(&["distance", &data("grid.cxc"), "0", "99"]).0, 2);
    assert_eq!(json(&["distance", &data("pendant.cxc"), "(z,0)", "(a,0)"]).0, 2);
    assert_eq!(text(&["frobnicate"]).0, 2);
    assert_eq!(text(&["--help"]).0, 0);
}

#[test]
fn generated_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for family in ["tree", "expansion", "grid-subcomplex", "product", "periodic-pendant", "periodic-glide", "flipped-strip"] {
        let path = dir.path().join(format!("{family}.cxc"));
        let (code, r) = json(&["gen", family, "--seed", "4", "--size", "6", "-o", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        let written = std::fs::read_to_string(&path).unwrap();
        assert_eq!(r["result"]["document"].as_str(), Some(written.as_str()));
        assert_eq!(json(&["validate", path.to_str().unwrap()]).0, 0, "{family}");
    }
    let (code, out) = text(&["gen", "periodic-line"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("cxc 1 periodic\n"));
    assert_eq!(json(&["gen", "moebius"]).0, 2);
}

#[test]
fn every_command_on_every_sample_matches_schema() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(files.len() >= 10);
    for f in files {
        let f = f.to_str().unwrap();
        for cmd in ["validate", "links", "is-cat0", "walls", "classify", "minset", "verify-min", "axis"] {
            json(&[cmd, f, "--loop-samples", "10"]);
        }
    }
}

#[test]
fn binary_honours_growth_cap_variable() {
    let bin = env!("CARGO_BIN_EXE_cxc");
    let out = Command::new(bin)
        .args(["distance", &data("pendant.cxc"), "(a,0)", "(a,40)", "--json"])
        .env("CXC_GROWTH_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["result"]["reason"].as_str().unwrap().contains("50"));
    let out = Command::new(bin)
        .args(["distance", &data("pendant.cxc"), "(a,0)", "(a,40)", "--growth-cap", "100000"])
        .env("CXC_GROWTH_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("distance: 40"));
}

#[test]
fn binary_reads_standard_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_cxc"))
        .args(["links", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"cxc 1 finite\ncube a : 0 1 2 3 4 5 6 7\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("8 vertex links checked"));
}
