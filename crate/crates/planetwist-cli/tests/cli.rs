//! End-to-end checks of the binary: exit codes, JSON outputs, and
//! byte-determinism of the certificate across runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn planetwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planetwist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("planetwist-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn build_emits_curve_document() {
    let out = planetwist(&["build", "--u", "2", "--v", "13"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["degree"], 6);
    assert_eq!(doc["terms"].as_array().unwrap().len(), 10);
    assert_eq!(doc["metadata"]["genus"], 10);
    assert_eq!(doc["metadata"]["provenance"], "huggins");
}

#[test]
fn build_scaled_document() {
    let out = planetwist(&["build", "--u", "2", "--v", "13", "--p", "3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["metadata"]["provenance"], "scaled");
}

#[test]
fn build_rejects_square_u_with_exit_2() {
    let out = planetwist(&["build", "--u", "1", "--v", "13"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("non-square"), "stderr: {stderr}");
}

#[test]
fn smoothness_subcommand_on_built_form() {
    let form_path = tmp_path("form.json");
    let build = planetwist(&[
        "build",
        "--u",
        "2",
        "--v",
        "13",
        "--out",
        form_path.to_str().unwrap(),
    ]);
    assert!(build.status.success());
    let out = planetwist(&["smoothness", "--form", form_path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SmoothCertified at q="), "got: {text}");
    let _ = std::fs::remove_file(&form_path);
}

#[test]
fn norm_check_messages_and_exit_codes() {
    let out = planetwist(&["norm-check", "--p", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout)
        .contains("order 6, inert, not a norm: nontrivial"));

    let out = planetwist(&["norm-check", "--p", "13"]);
    assert_eq!(out.status.code(), Some(1));

    let out = planetwist(&["norm-check", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));

    // machine output
    let out = planetwist(&["norm-check", "--p", "5", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["order_mod_7"], 6);
    assert_eq!(doc["conclusion"], "NontrivialCocycle");
}

#[test]
fn quaternion_check_reports_obstruction() {
    let out = planetwist(&["quaternion-check", "--u", "2", "--v", "13"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout)
        .contains("NotEmbeddable (local obstruction at 13)"));
}

#[test]
fn cocycle_check_validates_81_pairs() {
    let out = planetwist(&["cocycle-check", "--p", "3"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("valid (81 pairs)"));
}

#[test]
fn verify_pipeline_exit_codes_and_determinism() {
    // p = 4: usage/validation error
    let out = planetwist(&["verify", "--u", "2", "--v", "13", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));

    // p = 3: full success, deterministic bytes across runs
    let cert_a = tmp_path("cert-a.json");
    let cert_b = tmp_path("cert-b.json");
    let run = |path: &PathBuf| {
        planetwist(&[
            "verify",
            "--u",
            "2",
            "--v",
            "13",
            "--p",
            "3",
            "--seed",
            "7",
            "--out",
            path.to_str().unwrap(),
        ])
    };
    let out_a = run(&cert_a);
    assert_eq!(out_a.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out_a.stderr));
    let out_b = run(&cert_b);
    assert_eq!(out_b.status.code(), Some(0));
    let bytes_a = std::fs::read(&cert_a).unwrap();
    let bytes_b = std::fs::read(&cert_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "same seed and config must be byte-identical");
    let doc: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
    assert!(doc["checks"].as_array().unwrap().len() >= 12);
    assert!(doc["conclusions"].as_array().unwrap().len() >= 2);
    let _ = std::fs::remove_file(&cert_a);
    let _ = std::fs::remove_file(&cert_b);

    // p = 13: the norm check is inconclusive, pipeline exits 1
    let out = planetwist(&["verify", "--u", "2", "--v", "13", "--p", "13"]);
    assert_eq!(out.status.code(), Some(1));
}
