//! The shipped scenario files stay runnable.

use std::path::PathBuf;
use std::process::Command;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run(command: &str, file: &str) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_dqgm"))
        .args([command, "--scenario"])
        .arg(scenario(file))
        .output()
        .unwrap();
    let report = serde_json::from_slice(&out.stdout).expect("report is JSON");
    (out.status.code().unwrap(), report)
}

#[test]
fn translate_on_the_integers() {
    let (code, report) = run("almost-periodic", "translate_z.json");
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "affirmative");
    assert_eq!(report["dimension"], 1);

    let (code, report) = run("verify-axioms", "translate_z.json");
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "pass");
}

#[test]
fn s3_convolution() {
    let (code, report) = run("convolve", "s3_convolution.json");
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "ok");
    assert!(report["details"]["representative"].is_array());

    let (code, report) = run("dual-unit", "s3_convolution.json");
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "ok");
}

#[test]
fn su2_invariance() {
    let (code, report) = run("verify-invariance", "su2_invariance.json");
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "pass");
}
