//! End-to-end checks of the binary: exit codes, output formats, and
//! backend coherence at the table level.

use std::path::PathBuf;
use std::process::{Command, Output};

fn swcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("swcat-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn validate_builtin_passes_with_exit_zero() {
    let out = swcat(&["validate", "--builtin", "uqsln:2", "--backend", "formal"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout_of(&out);
    assert!(text.contains("yang-baxter   pass"));
    assert!(text.contains("hecke         pass"));
    assert!(text.contains("overall       pass"));
}

#[test]
fn validate_broken_symmetry_exits_one() {
    // R = id violates the Hecke relation for a formal q
    let path = temp_path("broken.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "q": "formal", "entries": [
            {"out": [0, 0], "in": [0, 0], "value": "1"},
            {"out": [0, 1], "in": [0, 1], "value": "1"},
            {"out": [1, 0], "in": [1, 0], "value": "1"},
            {"out": [1, 1], "in": [1, 1], "value": "1"}
        ]}"#,
    )
    .unwrap();
    let out = swcat(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = stdout_of(&out);
    assert!(text.contains("hecke         FAIL"), "{text}");
    assert!(text.contains("residual"), "{text}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn malformed_file_exits_two() {
    let path = temp_path("malformed.json");
    std::fs::write(&path, r#"{"n": 2, "q": "formal", "entries": ["#).unwrap();
    let out = swcat(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    std::fs::remove_file(&path).ok();

    let path = temp_path("badvalue.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "q": "formal", "entries": [{"out": [0, 0], "in": [0, 0], "value": "q^"}]}"#,
    )
    .unwrap();
    let out = swcat(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_two() {
    let out = swcat(&["validate"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = swcat(&["validate", "--builtin", "nope:2"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = swcat(&["frame", "--builtin", "uqsln:2", "--backend", "1"]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "non-generic q is a failed check: {out:?}"
    );
}

#[test]
fn frame_builtin_reports_naturality() {
    let out = swcat(&["frame", "--builtin", "uqsln:2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("frame  p = 2"), "{text}");
    assert!(text.contains("natural = true"), "{text}");
    assert!(text.contains("epsilon = +1"), "{text}");
    assert!(text.contains("(+, -1/2)"), "{text}");
}

#[test]
fn frame_scalar_r_exits_one_not_even() {
    let path = temp_path("scalar-r.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "q": "formal", "entries": [
            {"out": [0, 0], "in": [0, 0], "value": "q"},
            {"out": [0, 1], "in": [0, 1], "value": "q"},
            {"out": [1, 0], "in": [1, 0], "value": "q"},
            {"out": [1, 1], "in": [1, 1], "value": "q"}
        ]}"#,
    )
    .unwrap();
    let out = swcat(&["frame", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("not even"), "{err}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn qdim_single_partition() {
    let out = swcat(&["qdim", "--builtin", "uqsln:2", "--partition", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("(2,1)"), "{text}");
    assert!(text.contains("q + q^-1"), "{text}");
    assert!(text.contains("all rows agree: pass"), "{text}");
}

#[test]
fn qdim_with_lemma_and_am_sections() {
    let out = swcat(&[
        "qdim",
        "--builtin",
        "uqsln:2",
        "--upto",
        "3",
        "--lemma-omega",
        "--am-check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("antisymmetrizer traces"), "{text}");
    assert!(text.contains("k = 1: q^-1 + q^-3"), "{text}");
    assert!(text.contains("k = 2: q^-4"), "{text}");
    assert!(
        text.contains("generating polynomial coefficients  pass"),
        "{text}"
    );
    assert!(text.contains("multiplicativity through LR"), "{text}");
    assert!(text.contains("all products agree: pass"), "{text}");
}

#[test]
fn json_report_round_trips_and_matches_text_values() {
    let json_out = swcat(&[
        "qdim",
        "--builtin",
        "uqsln:2",
        "--upto",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(json_out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&json_out)).unwrap();
    // round-trip through the schema
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(value, again);
    assert_eq!(value["validation"]["all_ok"], serde_json::json!(true));
    assert_eq!(value["frame"]["p"], serde_json::json!(2));
    let rows = value["dimensions"]["rows"].as_array().unwrap();
    let text_out = stdout_of(&swcat(&["qdim", "--builtin", "uqsln:2", "--upto", "2"]));
    for row in rows {
        // text and JSON carry identical value strings
        let trace = row["trace"].as_str().unwrap();
        assert!(
            text_out.contains(trace),
            "`{trace}` missing from text output"
        );
    }
}

#[test]
fn out_flag_writes_file() {
    let path = temp_path("report.json");
    let out = swcat(&[
        "validate",
        "--builtin",
        "uqsln:2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["all_ok"], serde_json::json!(true));
    std::fs::remove_file(&path).ok();
}

#[test]
fn formal_and_numeric_backends_agree_at_q_three_halves() {
    // identical table values for `--backend formal` evaluated at 3/2 versus
    // `--backend 3/2` directly
    let formal = swcat(&[
        "qdim",
        "--builtin",
        "uqsln:2",
        "--upto",
        "3",
        "--format",
        "json",
    ]);
    let numeric = swcat(&[
        "qdim",
        "--builtin",
        "uqsln:2",
        "--upto",
        "3",
        "--backend",
        "3/2",
        "--format",
        "json",
    ]);
    assert_eq!(formal.status.code(), Some(0));
    assert_eq!(numeric.status.code(), Some(0));
    let vf: serde_json::Value = serde_json::from_str(&stdout_of(&formal)).unwrap();
    let vn: serde_json::Value = serde_json::from_str(&stdout_of(&numeric)).unwrap();
    let ctx = swcat_core::scalar::QContext::Formal;
    let q = swcat_core::scalar::parse_rat("3/2").unwrap();
    let rows_f = vf["dimensions"]["rows"].as_array().unwrap();
    let rows_n = vn["dimensions"]["rows"].as_array().unwrap();
    assert_eq!(rows_f.len(), rows_n.len());
    for (rf, rn) in rows_f.iter().zip(rows_n) {
        assert_eq!(rf["partition"], rn["partition"]);
        let formal_value = ctx.parse(rf["trace"].as_str().unwrap()).unwrap();
        let specialized = formal_value.eval_at(&q).unwrap();
        assert_eq!(specialized.to_string(), rn["trace"].as_str().unwrap());
    }
}

#[test]
fn report_runs_everything() {
    let out = swcat(&["report", "--builtin", "uqsln:2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    for section in [
        "validation",
        "frame  p = 2",
        "dimensions",
        "antisymmetrizer traces",
        "multiplicativity through LR",
        "tableau independence",
    ] {
        assert!(text.contains(section), "missing `{section}` in:\n{text}");
    }
}
