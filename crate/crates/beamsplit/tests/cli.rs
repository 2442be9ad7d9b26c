//! End-to-end checks of the command-line interface: file formats, round
//! trips, and exit codes.

use std::path::PathBuf;
use std::process::Command;

use beamsplit::cli::{parse_state_file, StateFile, EXIT_CUTOFF, EXIT_USAGE};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_beamsplit"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("beamsplit-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn state_command_writes_coherent_amplitudes() {
    let out = workdir("coherent").join("coherent.json");
    let status = bin()
        .args(["state", "--kind", "coherent", "--alpha", "1.0+0.0i", "--nmax", "25", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let file = parse_state_file(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(file.modes, 1);
    assert_eq!(file.kind, "pure");
    // Leading amplitude e^{-1/2}.
    let expected = (-0.5f64).exp();
    assert!((file.data[0][0] - expected).abs() < 1e-12);
    assert!(file.data[0][1].abs() < 1e-15);

    // Round trip: re-reading and re-serializing reproduces the file exactly.
    let reloaded = StateFile::from_single(&file.to_single().unwrap());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        serde_json::to_string(&reloaded).unwrap()
    );
}

#[test]
fn state_command_builds_vacuum_and_unpolarized() {
    let dir = workdir("vac");
    let vac_path = dir.join("vac.json");
    assert!(bin()
        .args(["state", "--kind", "fock", "--n", "0", "--nmax", "8", "--out"])
        .arg(&vac_path)
        .status()
        .unwrap()
        .success());
    let vac = parse_state_file(&std::fs::read(&vac_path).unwrap()).unwrap();
    assert_eq!(vac.data[0], [1.0, 0.0]);
    assert!(vac.data[1..].iter().all(|p| p == &[0.0, 0.0]));

    let unpol_path = dir.join("unpol.json");
    assert!(bin()
        .args(["state", "--kind", "unpolarized", "--sector", "1", "--nmax", "4", "--out"])
        .arg(&unpol_path)
        .status()
        .unwrap()
        .success());
    let unpol = parse_state_file(&std::fs::read(&unpol_path).unwrap()).unwrap();
    assert_eq!(unpol.modes, 2);
    assert_eq!(unpol.kind, "mixed");
    let joint = unpol.to_joint().unwrap();
    let rho = joint.density();
    let k01 = joint.cutoff().flat_index(0, 1);
    let k10 = joint.cutoff().flat_index(1, 0);
    assert!((rho[(k01, k01)].re - 0.5).abs() < 1e-15);
    assert!((rho[(k10, k10)].re - 0.5).abs() < 1e-15);
}

#[test]
fn apply_command_rotates_a_photon_pair() {
    let dir = workdir("apply");
    let a = dir.join("one.json");
    let b = dir.join("vac.json");
    let out = dir.join("rotated.json");
    for (path, n) in [(&a, "1"), (&b, "0")] {
        assert!(bin()
            .args(["state", "--kind", "fock", "--n", n, "--nmax", "6", "--out"])
            .arg(path)
            .status()
            .unwrap()
            .success());
    }
    let status = bin()
        .args(["apply", "--a"])
        .arg(&a)
        .arg("--b")
        .arg(&b)
        .args(["--theta", "1.5707963267948966", "--phi", "0.0", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let rotated = parse_state_file(&std::fs::read(&out).unwrap())
        .unwrap()
        .to_joint()
        .unwrap();
    let grid = rotated.grid().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((grid[(1, 0)].re - s).abs() < 1e-12);
    assert!((grid[(0, 1)].re - s).abs() < 1e-12);
}

#[test]
fn report_command_emits_diagnostics() {
    let dir = workdir("report");
    let state = dir.join("pair.json");
    let report = dir.join("report.json");
    assert!(bin()
        .args(["state", "--descriptor", r#"{"kind":"fock_pair","m":1,"n":0}"#, "--nmax", "4", "--out"])
        .arg(&state)
        .status()
        .unwrap()
        .success());
    let rotated = dir.join("rotated.json");
    assert!(bin()
        .args(["apply", "--in"])
        .arg(&state)
        .args(["--theta", "1.5707963267948966", "--out"])
        .arg(&rotated)
        .status()
        .unwrap()
        .success());
    assert!(bin()
        .args(["report", "--in"])
        .arg(&rotated)
        .arg("--out")
        .arg(&report)
        .status()
        .unwrap()
        .success());
    let parsed: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(parsed["schmidt_rank"], 2);
    assert!((parsed["e_p"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((parsed["min_pt_eigenvalue"].as_f64().unwrap() + 0.5).abs() < 1e-12);
    assert_eq!(parsed["ppt"], false);
}

#[test]
fn sweep_command_reproduces_quadratic_growth() {
    let dir = workdir("sweep");
    let out = dir.join("sweep.csv");
    let status = bin()
        .args([
            "sweep",
            "--a",
            r#"{"kind":"fock","n":1}"#,
            "--b",
            r#"{"kind":"fock","n":0}"#,
            "--theta-end",
            "0.2",
            "--steps",
            "5",
            "--nmax",
            "8",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "# beamsplit sweep v1: theta,e_p,negativity,min_pt_eigenvalue"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|line| line.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    // θ = 0 row is exactly zero.
    assert_eq!(rows[0][1], 0.0);
    // For a single photon against vacuum the reduced state is
    // diag(cos², sin²), so E_p = sin²θ / 2 exactly, ≈ θ²/2 with a quartic
    // remainder.
    for row in &rows[1..] {
        let theta: f64 = row[0];
        let exact = theta.sin().powi(2) / 2.0;
        assert!((row[1] - exact).abs() < 1e-12, "E_p {} vs sin²θ/2 {exact}", row[1]);
        let quadratic = theta * theta / 2.0;
        assert!(
            (row[1] - quadratic).abs() <= theta.powi(4) / 4.0,
            "E_p {} vs θ²/2 {quadratic}",
            row[1]
        );
    }
}

#[test]
fn sweep_of_coherent_pair_stays_separable() {
    let dir = workdir("sweep-coherent");
    let out = dir.join("sweep.csv");
    assert!(bin()
        .args([
            "sweep",
            "--a",
            r#"{"kind":"coherent","alpha":[0.8,0.0]}"#,
            "--b",
            r#"{"kind":"coherent","alpha":[0.0,0.5]}"#,
            "--theta-end",
            "2.8",
            "--steps",
            "4",
            "--nmax",
            "22",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap()
        .success());
    let text = std::fs::read_to_string(&out).unwrap();
    for line in text.lines().skip(1) {
        let fields: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(fields[1] < 1e-10, "E_p column {line}");
        assert!(fields[2] < 1e-10, "negativity column {line}");
    }
}

#[test]
fn usage_errors_exit_with_code_two() {
    let code = bin()
        .args(["state", "--kind", "nonsense", "--out", "/tmp/never-written.json"])
        .status()
        .unwrap()
        .code();
    assert_eq!(code, Some(EXIT_USAGE));

    let code = bin().args(["no-such-command"]).status().unwrap().code();
    assert_eq!(code, Some(EXIT_USAGE));
}

#[test]
fn leakage_errors_exit_with_code_three() {
    let out = workdir("leak").join("never.json");
    let output = bin()
        .args(["state", "--kind", "coherent", "--alpha", "3.0+0.0i", "--nmax", "6", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_CUTOFF));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("leakage"), "stderr: {stderr}");
    assert!(stderr.contains("--nmax"), "hint missing: {stderr}");
}
