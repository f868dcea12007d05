//! End-to-end tests of the `csf` binary: output contents, exit codes, JSON
//! shape, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(file: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(file);
    p.display().to_string()
}

fn csf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn ell_of_poincare_sphere() {
    let out = csf(&["ell", &data("poincare.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ell = -13/60"), "{text}");
    assert!(text.contains("kappa(1) = 1/120"));
    assert!(text.contains("kappa(5) = 49/120"));
    assert!(text.contains("kappa(2) = inf"));
}

#[test]
fn ell_supports_shifted_windows() {
    let out = csf(&["ell", &data("poincare.json"), "--window", "8..15"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("kappa(9) = 121/120"), "{text}");
    assert!(text.contains("kappa(13) = 169/120"));
}

#[test]
fn kappa_single_degree() {
    let out = csf(&["kappa", &data("poincare.json"), "--degree", "9"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("kappa(9) = 121/120"));
}

#[test]
fn ell_of_empty_manifest_is_infinite() {
    let out = csf(&["ell", &data("s3-empty.json")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ell = inf"));
}

#[test]
fn toy_manifest_reports_its_finite_bar() {
    let out = csf(&["barcode", &data("toy-finite-bar.json")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("degree 0: [1/4, 3/4)"));
    let out = csf(&["ell", &data("toy-finite-bar.json")]);
    assert!(stdout(&out).contains("ell = inf"));
}

#[test]
fn json_reports_parse_and_use_exact_strings() {
    let out = csf(&["--json", "ell", &data("poincare.json")]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["command"], "ell");
    assert_eq!(v["results"]["ell"], "-13/60");
    let kappa = v["results"]["kappa"].as_array().unwrap();
    assert_eq!(kappa[1]["value"], "1/120");
    assert_eq!(kappa[0]["value"], "inf");
    assert!(v["inputs"][0]["digest"].as_str().unwrap().len() == 16);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cases: Vec<Vec<String>> = vec![
        vec!["ell".into(), data("poincare.json")],
        vec!["--json".into(), "barcode".into(), data("poincare.json")],
        vec!["--json".into(), "certify".into(), data("certificate-ladder.json")],
        vec!["alexander".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let a = csf(&refs);
        let b = csf(&refs);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
    }
}

#[test]
fn triangle_check_passes_on_shipped_samples() {
    let out = csf(&["triangle-check", &data("triangle-zero-middle.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("g1 induces an isomorphism H(C1) -> H(C2): yes"));
    assert!(text.contains("verdict: PASS"));

    let out = csf(&["triangle-check", &data("triangle-identity-f.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H(Cone(f0)) = 0"));
    assert!(text.contains("verdict: PASS"));
}

#[test]
fn triangle_check_fails_verification_with_exit_2() {
    // The zero-middle sample with the crucial q entries removed: the last
    // identity gives q = 0 which is not homotopic to the identity.
    let broken = r#"{
        "name": "broken",
        "complexes": [
            { "dim": 0, "differential": [] },
            { "dim": 1, "differential": [] },
            { "dim": 1, "differential": [] }
        ],
        "f": [ { "entries": [] }, { "entries": [] }, { "entries": [] } ],
        "g": [ { "entries": [] }, { "entries": [] }, { "entries": [] } ],
        "h": [ { "entries": [] }, { "entries": [] }, { "entries": [] } ],
        "q": [ { "entries": [] }, { "entries": [] }, { "entries": [] } ]
    }"#;
    let dir = std::env::temp_dir().join("csf-cli-test-broken.json");
    std::fs::write(&dir, broken).unwrap();
    let out = csf(&["triangle-check", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn validation_failures_exit_1() {
    // Unknown file.
    let out = csf(&["ell", "/nonexistent/nowhere.json"]);
    assert_eq!(out.status.code(), Some(1));

    // Grading violation.
    let bad = r#"{
        "name": "bad",
        "generators": [
            { "label": "x", "grading": 1, "cs": "1/2" },
            { "label": "y", "grading": 1, "cs": "1/4" }
        ],
        "boundary": [["x", "y"]]
    }"#;
    let path = std::env::temp_dir().join("csf-cli-test-bad-grading.json");
    std::fs::write(&path, bad).unwrap();
    let out = csf(&["ell", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("grading"), "{err}");

    // Surgery with n = 0.
    let out = csf(&["surgery-ranks", "--n", "0", "--base", "0,1,0,0,0,1,0,0"]);
    assert_eq!(out.status.code(), Some(1));

    // Bad usage.
    let out = csf(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn surgery_ranks_echo_and_decomposition() {
    let out = csf(&["surgery-ranks", "--n", "1", "--base", "1,2,3,4,5,6,7,0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result: [1, 2, 3, 4, 5, 6, 7, 0]"));

    let out = csf(&["surgery-ranks", "--n", "-2", "--base", "0,1,0,0,0,1,0,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("result: [0, 1, 0, 1, 0, 1, 0, 1]"));
    assert!(text.contains("out(3) = base(3) + base(1)"));

    let out = csf(&["--json", "surgery-ranks", "--n", "3", "--base", "1,0,0,0,0,0,0,0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["total"], 3);
}

#[test]
fn alexander_pipeline_report() {
    let out = csf(&["alexander"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b = -4a"));
    assert!(text.contains("c = 6a + 1 or c = 6a - 1"));
    assert!(text.contains("4a and -4a"));
    assert!(text.contains("(a, b, c) = (0, 0, 1)"));
    assert!(text.contains("the polynomial is 1"));
}

#[test]
fn certify_reports() {
    let out = csf(&["certify", &data("certificate-pm-one.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ell(S_-1) < ell(S_+1) - 1/8"));
    assert!(text.contains("gap >= 1/8 (strict)"));
    assert!(text.contains("contradiction: no"));

    let out = csf(&["certify", &data("certificate-ladder.json")]);
    let text = stdout(&out);
    assert_eq!(text.matches(" < ").count(), 5, "4 steps + cumulative: {text}");
    assert!(text.contains("cyclic: no"));

    let out = csf(&["--json", "certify", &data("certificate-cyclic.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["contradictory"], true);
    assert_eq!(v["results"]["cyclic"], true);
}

#[test]
fn certify_marks_missing_evidence_conditional() {
    let spec = r#"{
        "name": "unattested",
        "steps": [
            {
                "label": "step",
                "source": "ell(X)",
                "target": "ell(Y)",
                "degree": 0,
                "level_base": "0",
                "slack": "positive"
            }
        ]
    }"#;
    let path = std::env::temp_dir().join("csf-cli-test-conditional.json");
    std::fs::write(&path, spec).unwrap();
    let out = csf(&["certify", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("CONDITIONAL"), "{text}");
    assert!(text.contains("conditional: yes"));
    // Without the nonvanishing evidence the relation cannot be strict.
    assert!(text.contains("ell(Y) <= ell(X)"));
}
