//! End-to-end checks of the binary: every subcommand run twice with the same
//! seed and configuration must write byte-identical output files, and the
//! error exit codes must distinguish parse failures, precondition refusals
//! and non-convergence.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heisgeo"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("heisgeo-cli-{}-{}", name, std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

const DILATION_SIM: &str = r#"{
    "lambda": 0.5,
    "rotation": { "P": [[[1.0, 0.0]]], "alpha": [1.0, 0.0] },
    "c": { "u": [[0.0, 0.0]], "center": [0.0, 0.0] }
}"#;

const TRANSLATION_SIM: &str = r#"{
    "lambda": 1.0,
    "rotation": { "P": [[[1.0, 0.0]]], "alpha": [1.0, 0.0] },
    "c": { "u": [[1.0, 0.0]], "center": [0.0, 0.0] }
}"#;

fn write_fixtures(dir: &Path) {
    fs::write(
        dir.join("gens.json"),
        format!(
            r#"{{ "field": "C", "n": 2, "mode": "sim", "generators": [{DILATION_SIM}, {TRANSLATION_SIM}] }}"#
        ),
    )
    .unwrap();
    fs::write(
        dir.join("isometry.json"),
        r#"{
            "field": "C", "n": 2, "basis": "E",
            "matrix": [
                [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.0, 1.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
            ]
        }"#,
    )
    .unwrap();
    fs::write(
        dir.join("fixedpoint.json"),
        format!(r#"{{ "field": "C", "n": 2, "similarity": {DILATION_SIM} }}"#),
    )
    .unwrap();
    fs::write(
        dir.join("discreteness.json"),
        format!(
            r#"{{ "field": "C", "n": 2, "f": {DILATION_SIM}, "g": {TRANSLATION_SIM}, "eps": 1e-6, "max_n": 40 }}"#
        ),
    )
    .unwrap();
    fs::write(
        dir.join("halfspace.json"),
        r#"{
            "field": "C", "n": 2,
            "beta": { "u": [[0.0, 0.0]], "center": [0.0, 1.0] },
            "points": [
                { "u": [[0.0, 0.0]], "center": [0.0, 0.0] },
                { "u": [[2.0, 0.0]], "center": [0.0, 3.0] }
            ]
        }"#,
    )
    .unwrap();
}

fn run_twice(dir: &Path, label: &str, args: &[&str]) {
    let mut outputs = Vec::new();
    for pass in 0..2 {
        let out_path = dir.join(format!("{label}-{pass}.out"));
        let status = bin()
            .args(args)
            .arg("--out")
            .arg(&out_path)
            .status()
            .unwrap();
        assert!(
            status.code().is_some(),
            "{label}: binary terminated by signal"
        );
        outputs.push(fs::read(&out_path).unwrap());
        assert!(!outputs[pass].is_empty(), "{label}: empty output file");
    }
    assert_eq!(outputs[0], outputs[1], "{label}: outputs differ between runs");
}

#[test]
fn every_subcommand_is_deterministic() {
    let dir = workdir("determinism");
    write_fixtures(&dir);
    let gens = dir.join("gens.json");
    let gens = gens.to_str().unwrap();
    run_twice(&dir, "verify", &["verify", "--field", "O", "--seed", "42"]);
    run_twice(&dir, "orbit-json", &["orbit", gens, "--max-word-len", "4"]);
    run_twice(
        &dir,
        "orbit-csv",
        &["orbit", gens, "--max-word-len", "4", "--format", "csv"],
    );
    run_twice(
        &dir,
        "orbit-par",
        &["orbit", gens, "--max-word-len", "4", "--jobs", "4"],
    );
    run_twice(&dir, "limitset", &["limitset", gens, "--max-word-len", "6"]);
    run_twice(
        &dir,
        "iwasawa",
        &["iwasawa", dir.join("isometry.json").to_str().unwrap()],
    );
    run_twice(
        &dir,
        "fixedpoint",
        &["fixedpoint", dir.join("fixedpoint.json").to_str().unwrap()],
    );
    run_twice(
        &dir,
        "discreteness",
        &["discreteness", dir.join("discreteness.json").to_str().unwrap()],
    );
    run_twice(
        &dir,
        "halfspace",
        &["halfspace", dir.join("halfspace.json").to_str().unwrap()],
    );
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn parallel_orbit_matches_serial() {
    let dir = workdir("jobs");
    write_fixtures(&dir);
    let gens = dir.join("gens.json");
    let serial = dir.join("serial.out");
    let parallel = dir.join("parallel.out");
    for (path, jobs) in [(&serial, "1"), (&parallel, "4")] {
        let status = bin()
            .args(["orbit", gens.to_str().unwrap(), "--max-word-len", "5", "--jobs", jobs])
            .arg("--out")
            .arg(path)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(fs::read(&serial).unwrap(), fs::read(&parallel).unwrap());
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_input_exits_2() {
    let dir = workdir("parse");
    let bad = dir.join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    for sub in ["orbit", "limitset", "iwasawa", "fixedpoint", "discreteness", "halfspace"] {
        let status = bin().args([sub, bad.to_str().unwrap()]).status().unwrap();
        assert_eq!(status.code(), Some(2), "{sub}: wrong exit for malformed input");
    }
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn precondition_refusal_exits_3() {
    let dir = workdir("precondition");
    // both maps fix the origin, so the witness construction must refuse
    fs::write(
        dir.join("doc.json"),
        format!(r#"{{ "field": "C", "n": 2, "f": {DILATION_SIM}, "g": {DILATION_SIM} }}"#),
    )
    .unwrap();
    let status = bin()
        .args(["discreteness", dir.join("doc.json").to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    // an isometry has no contracting fixed point
    fs::write(
        dir.join("rot.json"),
        format!(r#"{{ "field": "C", "n": 2, "similarity": {TRANSLATION_SIM} }}"#),
    )
    .unwrap();
    let status = bin()
        .args(["fixedpoint", dir.join("rot.json").to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn non_convergence_exits_4() {
    let dir = workdir("nonconvergence");
    // lambda near 1 contracts so slowly that the iteration cap is hit
    fs::write(
        dir.join("slow.json"),
        r#"{
            "field": "C", "n": 2,
            "similarity": {
                "lambda": 0.9999999,
                "rotation": { "P": [[[1.0, 0.0]]], "alpha": [1.0, 0.0] },
                "c": { "u": [[1.0, 0.0]], "center": [0.0, 0.0] }
            }
        }"#,
    )
    .unwrap();
    let status = bin()
        .args(["fixedpoint", dir.join("slow.json").to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
    fs::remove_dir_all(&dir).ok();
}
