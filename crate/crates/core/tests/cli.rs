use std::path::{Path, PathBuf};
use std::process::Command;

use qlms_sparse::cli::{EXIT_CONFIG, EXIT_DIVERGED, EXIT_OK};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qlms-sparse"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("test.cfg");
    std::fs::write(&path, body).unwrap();
    path
}

const SMALL: &str = "\
length = 8
active_taps = 2, 5
mu = 0.005
rho = 0.0005
snr_db = 30
num_iterations = 400
num_runs = 4
seed = 3
";

#[test]
fn writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("curves.csv");
    let res = bin().arg("--config").arg(&cfg).arg("--out").arg(&out).output().unwrap();
    assert_eq!(
        res.status.code(),
        Some(EXIT_OK),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let stdout = String::from_utf8(res.stdout).unwrap();
    assert!(stdout.contains("qlms") && stdout.contains("za_qlms") && stdout.contains("steady state"));
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 401);
    assert_eq!(lines[0], "iteration,qlms_mse,qlms_mse_db,za_qlms_mse,za_qlms_mse_db");
}

#[test]
fn quiet_suppresses_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("curves.csv");
    let res = bin()
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(EXIT_OK));
    assert!(res.stdout.is_empty());
}

#[test]
fn overrides_change_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let run = |extra: &[&str], name: &str| {
        let out = dir.path().join(name);
        let status = bin()
            .arg("--config")
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .arg("--quiet")
            .args(extra)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let base = run(&[], "a.csv");
    assert_eq!(base, run(&["--seed", "3"], "b.csv"));
    assert_ne!(base, run(&["--seed", "4"], "c.csv"));
    assert_ne!(base, run(&["--runs", "2"], "d.csv"));
}

#[test]
fn missing_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    let res = bin()
        .arg("--config")
        .arg(dir.path().join("nope.cfg"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(EXIT_CONFIG));
    assert!(!out.exists());
}

#[test]
fn invalid_values_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    let cfg = write_config(dir.path(), &SMALL.replace("mu = 0.005", "mu = -1"));
    let res = bin().arg("--config").arg(&cfg).arg("--out").arg(&out).output().unwrap();
    assert_eq!(res.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&res.stderr).contains("mu"));

    let cfg = write_config(dir.path(), SMALL);
    let res = bin()
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(["--runs", "0"])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(EXIT_CONFIG));
    assert!(!out.exists());
}

#[test]
fn divergence_leaves_no_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    let cfg = write_config(dir.path(), &SMALL.replace("mu = 0.005", "mu = 40"));
    let res = bin().arg("--config").arg(&cfg).arg("--out").arg(&out).output().unwrap();
    assert_eq!(res.status.code(), Some(EXIT_DIVERGED));
    assert!(!out.exists());
    assert!(String::from_utf8_lossy(&res.stderr).contains("diverged"));
}

#[test]
fn shipped_full_scale_scenario_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s2.csv");
    let status = bin()
        .arg("--config")
        .arg(scenario("scenario2.cfg"))
        .arg("--out")
        .arg(&out)
        .args(["--runs", "2", "--quiet"])
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 20_001);
}
