//! End-to-end tests of the binary: spec'd invocations, exit codes,
//! determinism and report round-trips.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_asymcoh"))
}

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON document")
}

fn exacts(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|e| e["exact"].as_str().unwrap())
        .collect()
}

#[test]
fn flag_evaluation_in_the_dominant_chamber() {
    let out = run(&["flag", "--type", "A2", "--class", "1,1"]);
    let doc = json_of(&out);
    assert_eq!(doc["kind"], "flag-evaluation");
    assert_eq!(doc["index"], 0);
    assert_eq!(doc["chamber"], "+++");
    assert_eq!(exacts(&doc["h"]), vec!["6", "0", "0", "0"]);
}

#[test]
fn flag_wall_class() {
    let out = run(&["flag", "--type", "A1", "--class", "0"]);
    let doc = json_of(&out);
    assert_eq!(doc["wall"], true);
    assert_eq!(exacts(&doc["h"]), vec!["0", "0"]);
    assert_eq!(doc["vanishing_factors"], serde_json::json!([0]));
}

#[test]
fn flag_chamber_enumeration() {
    let out = run(&["flag", "--type", "A2", "--chambers"]);
    let doc = json_of(&out);
    let chambers = doc["chambers"].as_array().unwrap();
    assert_eq!(chambers.len(), 6);
    let mut indices: Vec<u64> = chambers
        .iter()
        .map(|c| c["index"].as_u64().unwrap())
        .collect();
    indices.sort_unstable();
    assert_eq!(indices, vec![0, 1, 1, 2, 2, 3]);
}

#[test]
fn flag_oracle_block() {
    let out = run(&["flag", "--type", "A2", "--class", "1,1", "--oracle", "200"]);
    let doc = json_of(&out);
    let oracle = &doc["oracle"];
    assert_eq!(oracle["index"], 0);
    assert_eq!(oracle["target"]["exact"], "6");
    // Relative gap within the documented 5/200 bound.
    let gap: f64 = oracle["relative_gap"]["decimal"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!(gap <= 0.025, "gap {gap}");
}

#[test]
fn flag_unsupported_type_exits_3() {
    let out = run(&["flag", "--type", "H3", "--class", "1,1,1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn flag_bad_class_exits_2() {
    let out = run(&["flag", "--type", "A2", "--class", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["flag", "--type", "A2", "--class", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["flag", "--type", "A2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surface_evaluation_with_decomposition() {
    let data = models_dir().join("blp2.json");
    let out = run(&["surface", "--data", data.to_str().unwrap(), "--class", "3,1"]);
    let doc = json_of(&out);
    assert_eq!(doc["case"], "pseudo-effective");
    assert_eq!(exacts(&doc["h"]), vec!["9", "1", "0"]);
    assert_eq!(doc["volume"]["exact"], "9");
    let z = &doc["zariski"];
    assert_eq!(z["p"], serde_json::json!(["3", "0"]));
    assert_eq!(z["n"], serde_json::json!(["0", "1"]));
    assert_eq!(z["support"], serde_json::json!(["E"]));
    assert_eq!(z["certificates"]["p_dot_n_zero"], true);
    assert_eq!(z["certificates"]["p_nef"], true);
    assert_eq!(z["certificates"]["support_negative_definite"], true);
    assert_eq!(doc["chamber"], serde_json::json!(["E"]));
}

#[test]
fn surface_indefinite_class() {
    let data = models_dir().join("blp2.json");
    let out = run(&["surface", "--data", data.to_str().unwrap(), "--class", "1,-3"]);
    let doc = json_of(&out);
    assert_eq!(doc["case"], "indefinite");
    assert_eq!(exacts(&doc["h"]), vec!["0", "8", "0"]);
    assert!(doc.get("zariski").is_none());
}

#[test]
fn surface_chamber_enumeration() {
    let data = models_dir().join("blp2.json");
    let out = run(&["surface", "--data", data.to_str().unwrap(), "--chambers"]);
    let doc = json_of(&out);
    let chambers = doc["chambers"].as_array().unwrap();
    assert_eq!(chambers.len(), 2);
    assert_eq!(chambers[0]["support"], serde_json::json!([]));
    assert_eq!(chambers[1]["support"], serde_json::json!(["E"]));

    let data = models_dir().join("bl2p2.json");
    let out = run(&["surface", "--data", data.to_str().unwrap(), "--chambers"]);
    let doc = json_of(&out);
    assert_eq!(doc["chambers"].as_array().unwrap().len(), 5);
}

#[test]
fn surface_chamber_query_on_non_big_class_exits_5() {
    let data = models_dir().join("blp2.json");
    let out = run(&[
        "surface",
        "--data",
        data.to_str().unwrap(),
        "--class",
        "1,-3",
        "--chamber",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn surface_schema_and_validation_errors() {
    // Malformed JSON: parse error.
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{ not json").unwrap();
    let out = run(&["surface", "--data", f.path().to_str().unwrap(), "--class", "1,1"]);
    assert_eq!(out.status.code(), Some(2));

    // Well-formed but mathematically invalid: wrong signature.
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"kind":"surface","rank":2,"gram":[[1,0],[0,1]],"curves":[],
            "cone":{{"mode":"quadric"}},"ample":[1,0]}}"#
    )
    .unwrap();
    let out = run(&["surface", "--data", f.path().to_str().unwrap(), "--class", "1,1"]);
    assert_eq!(out.status.code(), Some(4));

    // Kind mismatch is a schema-level error.
    let data = models_dir().join("exe.json");
    let out = run(&["surface", "--data", data.to_str().unwrap(), "--class", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn abelian_preset_evaluation() {
    let out = run(&["abelian", "--exe", "1,1,1"]);
    let doc = json_of(&out);
    assert_eq!(doc["index"], 0);
    assert_eq!(exacts(&doc["h"]), vec!["6", "0", "0"]);
    assert_eq!(doc["pfaffian"]["exact"], "3");

    let out = run(&["abelian", "--exe", "1,1,-1"]);
    let doc = json_of(&out);
    assert_eq!(doc["index"], 1);
    assert_eq!(exacts(&doc["h"]), vec!["0", "2", "0"]);

    let out = run(&["abelian", "--exe", "1,1,-1/2"]);
    let doc = json_of(&out);
    assert_eq!(doc["degenerate"], true);
    assert_eq!(exacts(&doc["h"]), vec!["0", "0", "0"]);
}

#[test]
fn abelian_model_file_evaluation() {
    // Elliptic curve with a degree-2 polarization.
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"kind":"abelian","g":1,
            "basis_forms":[{{"re":[[2]],"im":[[0]]}}],
            "lattice":[[1,0],[0,1]]}}"#
    )
    .unwrap();
    let out = run(&["abelian", "--data", f.path().to_str().unwrap(), "--class", "1"]);
    let doc = json_of(&out);
    assert_eq!(doc["g"], 1);
    assert_eq!(doc["index"], 0);
    assert_eq!(exacts(&doc["h"]), vec!["2", "0"]);
    assert_eq!(doc["pfaffian"]["exact"], "2");

    // The shipped full E x E model agrees with the preset.
    let data = models_dir().join("exe.json");
    let out = run(&["abelian", "--data", data.to_str().unwrap(), "--class", "1,1,1"]);
    let doc = json_of(&out);
    assert_eq!(doc["index"], 0);
    assert_eq!(exacts(&doc["h"]), vec!["6", "0", "0"]);
    assert_eq!(doc["pfaffian"]["exact"], "3");
}

#[test]
fn abelian_usage_errors_exit_2() {
    let out = run(&["abelian"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["abelian", "--exe", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_suites_pass_on_shipped_models() {
    let out = run(&["check", "--type", "A2", "--suite", "homogeneity"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["pass"], true);

    let data = models_dir().join("blp2.json");
    let out = run(&["check", "--data", data.to_str().unwrap(), "--suite", "euler"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["check", "--type", "A2", "--suite", "walls"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["check", "--exe", "--suite", "all", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let suites: Vec<&str> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["suite"].as_str().unwrap())
        .collect();
    assert_eq!(
        suites,
        vec!["homogeneity", "walls", "lipschitz", "euler", "telescoping"]
    );
}

#[test]
fn check_reports_lipschitz_constant() {
    let data = models_dir().join("blp2.json");
    let out = run(&[
        "check",
        "--data",
        data.to_str().unwrap(),
        "--suite",
        "lipschitz",
        "--samples",
        "60",
    ]);
    let doc = json_of(&out);
    let item = &doc["results"][0];
    assert!(item["lipschitz_constant"]["exact"].as_str().is_some());
    assert!(item["control_constant"]["exact"].as_str().is_some());
}

#[test]
fn check_suite_failure_exits_1_with_witness() {
    // A single-pair sample legitimately fails the factor-two stability
    // criterion for this seed.
    let out = run(&[
        "check", "--type", "A2", "--suite", "lipschitz", "--samples", "1", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("suite lipschitz failed"), "stderr: {stderr}");
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], false);
}

#[test]
fn check_euler_on_flag_model_exits_2() {
    let out = run(&["check", "--type", "A2", "--suite", "euler"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_inconsistent_model_exits_4() {
    // Pseudo-effective classes exist whose residue cannot be made nef:
    // the declared cone is not generated by the (empty) curve list.
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"kind":"surface","rank":2,"gram":[[1,0],[0,-1]],"curves":[],
            "cone":{{"mode":"polyhedral","mori":[[0,1],[1,-1]]}},"ample":[2,-1]}}"#
    )
    .unwrap();
    let out = run(&[
        "check",
        "--data",
        f.path().to_str().unwrap(),
        "--suite",
        "homogeneity",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn seed_environment_variable_overrides_flag() {
    let out = bin()
        .args(["check", "--type", "A1", "--suite", "homogeneity", "--seed", "7"])
        .env("ASYMCOH_SEED", "99")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["seed"], 99);
}

#[test]
fn reports_are_deterministic() {
    let data = models_dir().join("bl2p2.json");
    let args = [
        "surface",
        "--data",
        data.to_str().unwrap(),
        "--class",
        "4,-1,1",
        "--chambers",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let args = ["check", "--type", "A2", "--suite", "all", "--samples", "40", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_round_trip_bit_exactly() {
    let data = models_dir().join("blp2.json");
    let out = run(&["surface", "--data", data.to_str().unwrap(), "--class", "7/2,-1/3"]);
    // The emitted document deserializes under the typed report schema and
    // the exact rationals survive byte for byte.
    let typed: asymcoh_cli::report::SurfaceReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(typed.kind, "surface-evaluation");
    assert_eq!(
        typed.class,
        Some(vec!["7/2".to_string(), "-1/3".to_string()])
    );
    // (7/2, -1/3) meets E and H - E nonnegatively, so it is its own
    // positive part: vol = 49/4 - 1/9 = 437/36.
    assert_eq!(typed.volume.as_ref().unwrap().exact, "437/36");
    let reparsed = asymcoh_cli::ratio::parse_rat(&typed.volume.unwrap().exact).unwrap();
    assert_eq!(
        reparsed,
        asymcoh::Rat::new(437.into(), 36.into()),
        "exact strings reparse to the same rational"
    );
    // Re-serializing reproduces the bytes.
    let doc = json_of(&out);
    let reparsed: Value =
        serde_json::from_str(&serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    assert_eq!(doc, reparsed);
}

#[test]
fn check_report_round_trips_typed() {
    let out = run(&["check", "--type", "A2", "--suite", "lipschitz", "--samples", "30"]);
    let typed: asymcoh_cli::report::CheckReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(typed.kind, "check");
    assert!(typed.pass);
    let constant = typed.results[0].lipschitz_constant.as_ref().unwrap();
    assert!(asymcoh_cli::ratio::parse_rat(&constant.exact).is_ok());
}
