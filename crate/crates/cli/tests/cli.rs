use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qvir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn verify_bracket_suite_passes() {
    let out = qvir(&[
        "verify", "bracket", "--degree", "4", "--q", "2,3/2", "--trials", "12",
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["failed"], 0);
}

#[test]
fn verify_detects_corrupted_sigma() {
    let out = qvir(&[
        "verify",
        "jacobi",
        "--degree",
        "3",
        "--trials",
        "4",
        "--corrupt-sigma",
    ]);
    assert_eq!(exit_code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_passed"], false);
}

#[test]
fn verify_all_covers_every_suite() {
    let dir = tmp_dir("verify_all");
    let out_path = dir.join("report.json");
    let out = qvir(&[
        "verify",
        "all",
        "--degree",
        "2",
        "--trials",
        "4",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let rows = report["rows"].as_array().unwrap();
    for suite in ["bracket", "central", "cocycle", "jacobi", "classical"] {
        assert!(
            rows.iter().any(|r| r["suite"] == suite),
            "missing suite {suite}"
        );
    }
    // expected-nonzero properties are present and confirmed
    for property in [
        "antisymmetry_failure",
        "cocycle_failure",
        "vir_q_cubic_residual_failure",
    ] {
        assert!(
            rows.iter()
                .any(|r| r["property"] == property && r["passed"] == true),
            "missing confirmed property {property}"
        );
    }
}

#[test]
fn verify_csv_format() {
    let out = qvir(&["verify", "classical", "--trials", "6", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite,property,"));
    assert!(text.contains("classical,euler_flow_form"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = qvir(&["verify", "nope"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn derive_emits_pipeline_and_both_renderings() {
    let out = qvir(&["derive", "qkdv-canonical", "--n", "4", "--q", "2"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pipeline = doc["linear"]["pipeline"].as_str().unwrap();
    assert!(pipeline.contains("(tau + tau^-1)^-1"), "{pipeline}");
    assert_eq!(doc["nonlinear"]["renderings_agree"], false);
    assert_eq!(doc["linear"]["pretty_value_on_zn"], "1785/1664·z");
}

#[test]
fn derive_classical_variant() {
    let out = qvir(&["derive", "classical-kdv", "--n", "3", "--c", "2"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // c n(n-1)(n-2) = 2 * 6 = 12 on z^0
    assert_eq!(doc["linear"]["pretty_value_on_zn"], "12");
}

#[test]
fn simulate_writes_deterministic_outputs() {
    let dir = tmp_dir("simulate");
    let config_path = dir.join("run.json");
    let config = serde_json::json!({
        "variant": "classical-burgers",
        "c": 0.0,
        "q": 2.0,
        "mode_cutoff": 4,
        "dt": 1e-3,
        "t_end": 0.01,
        "output_every": 5,
        "initial": {"modes": [[1, 0.3, 0.0], [-1, 0.3, 0.0]]},
        "out_prefix": dir.join("run").to_str().unwrap(),
    });
    fs::write(&config_path, serde_json::to_string_pretty(&config).unwrap()).unwrap();

    let out = qvir(&["simulate", config_path.to_str().unwrap()]);
    assert_eq!(
        exit_code(&out),
        0,
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let modes_first = fs::read(dir.join("run_modes.csv")).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("run_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["diverged"], false);
    assert_eq!(manifest["config"]["variant"], "classical-burgers");
    assert!(fs::read_to_string(dir.join("run_diagnostics.csv"))
        .unwrap()
        .starts_with("t,mode_norm,"));

    // rerun with the same config: bit-identical outputs
    let out = qvir(&["simulate", config_path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let modes_second = fs::read(dir.join("run_modes.csv")).unwrap();
    assert_eq!(modes_first, modes_second);
}

#[test]
fn simulate_rejects_bad_configs() {
    let dir = tmp_dir("simulate_bad");
    let config_path = dir.join("bad.json");
    let config = serde_json::json!({
        "variant": "classical-kdv",
        "c": 1.0,
        "q": 2.0,
        "mode_cutoff": 4,
        "dt": -1.0,
        "t_end": 0.01,
        "initial": {"modes": [[1, 0.3, 0.0]]},
    });
    fs::write(&config_path, config.to_string()).unwrap();
    let out = qvir(&["simulate", config_path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn simulate_refuses_unstable_steps_without_override() {
    let dir = tmp_dir("simulate_unstable");
    let config_path = dir.join("stiff.json");
    let config = serde_json::json!({
        "variant": "classical-kdv",
        "c": 1.0,
        "q": 2.0,
        "mode_cutoff": 16,
        "dt": 0.1,
        "t_end": 0.2,
        "initial": {"modes": [[1, 0.3, 0.0]]},
    });
    fs::write(&config_path, config.to_string()).unwrap();
    let out = qvir(&["simulate", config_path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("stability advisory"));

    // the override flag forces the run through (it may diverge, which is a
    // flagged outcome, not an error)
    let out = qvir(&[
        "simulate",
        config_path.to_str().unwrap(),
        "--override-stability",
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn hierarchy_solves_the_constant_field() {
    let dir = tmp_dir("hierarchy");
    let input_path = dir.join("input.json");
    let input = serde_json::json!({
        "q": "3/2",
        "u": {"modes": [[0, "1", "0"]]},
    });
    fs::write(&input_path, input.to_string()).unwrap();
    let out = qvir(&["hierarchy", input_path.to_str().unwrap()]);
    assert_eq!(
        exit_code(&out),
        0,
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // u1 = (q-1) z = 1/2 z; s0 = u1/(1+q) = 1/5 z
    assert_eq!(doc["u1"]["modes"], serde_json::json!([[1, "1/2", "0"]]));
    assert_eq!(doc["s0"]["modes"], serde_json::json!([[1, "1/5", "0"]]));
    for key in ["s1", "s2", "w0", "w1", "w2", "rhs"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn hierarchy_missing_file_is_a_usage_error() {
    let out = qvir(&["hierarchy", "/nonexistent/input.json"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn seed_env_var_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_qvir"))
        .args(["verify", "classical", "--trials", "4"])
        .env("QVIR_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
}
