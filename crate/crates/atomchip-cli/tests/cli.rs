//! End-to-end checks of the command-line interface.

use std::path::Path;
use std::process::{Command, Output};

fn atomchip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomchip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_default_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("config.json");
    let config = atomchip::config::ScenarioConfig::default();
    std::fs::write(&path, config.to_json()).unwrap();
    path
}

#[test]
fn report_writes_three_formats_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_default_config(dir.path());
    let out = dir.path().join("out");
    let result = atomchip(&[
        "report",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    for name in ["report.txt", "report.json", "report.csv"] {
        assert!(out.join(name).is_file(), "{name} missing");
    }
    let txt = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(txt.contains("cloud.length_1e2"));
    assert!(!txt.contains("FAIL"));
}

#[test]
fn report_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_default_config(dir.path());
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    for out in [&out1, &out2] {
        let result = atomchip(&[
            "report",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(result.status.success());
    }
    for name in ["report.txt", "report.json", "report.csv"] {
        let a = std::fs::read(out1.join(name)).unwrap();
        let b = std::fs::read(out2.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn missing_config_exits_two_and_names_path() {
    let result = atomchip(&["report", "--config", "/no/such/config.json"]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("/no/such/config.json"), "{stderr}");
}

#[test]
fn invalid_config_exits_two_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut config = atomchip::config::ScenarioConfig::default();
    config.dipole_trap.beam_power_each = atomchip::units::Quantity::new(80.0, "parsec");
    std::fs::write(&path, config.to_json()).unwrap();
    let result = atomchip(&["validate-config", "--config", path.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("dipole_trap.beam_power_each"), "{stderr}");
}

#[test]
fn validate_config_accepts_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_default_config(dir.path());
    let result = atomchip(&["validate-config", "--config", config.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
}

#[test]
fn mirror_override_shows_snr_three_in_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = atomchip::config::ScenarioConfig::default();
    config.probe.mirror_reflectivity = atomchip::units::Quantity::new(0.9, "1");
    let path = dir.path().join("mirror.json");
    std::fs::write(&path, config.to_json()).unwrap();
    let result = atomchip(&["report", "--config", path.to_str().unwrap(), "--format", "csv"]);
    assert!(result.status.success());
    let stdout = String::from_utf8_lossy(&result.stdout);
    let row = stdout
        .lines()
        .find(|l| l.starts_with("detection.snr_mirror_enhanced"))
        .expect("row present");
    assert!(row.contains("pass"));
    assert!(row.contains("2.76"), "{row}");
}

#[test]
fn sweep_emits_rows_and_gnuplot_script() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_default_config(dir.path());
    let out = dir.path().join("sweep");
    let result = atomchip(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--param",
        "dipole_trap.beam_power_each",
        "--min",
        "40",
        "--max",
        "160",
        "--points",
        "2",
        "--scale",
        "log",
        "--objective",
        "trap.radial_freq_contrast0",
        "--out",
        out.to_str().unwrap(),
        "--jobs",
        "1",
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let csv = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3); // header + 2 points
    assert!(out.join("sweep.gnuplot").is_file());
    // sqrt(P): 4x the power doubles the radial frequency
    let value = |line: &str| line.split(',').nth(1).unwrap().parse::<f64>().unwrap();
    let ratio = value(lines[2]) / value(lines[1]);
    assert!((ratio - 2.0).abs() < 1e-6, "ratio {ratio}");
}

#[test]
fn sweep_bad_path_exits_two_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_default_config(dir.path());
    let result = atomchip(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--param",
        "not.a.path",
        "--min",
        "1",
        "--max",
        "2",
        "--points",
        "2",
        "--objective",
        "trap.depth",
    ]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("not.a.path"));
}

#[test]
fn simulate_gate_reports_json() {
    let result = atomchip(&["simulate-gate", "--gate", "hadamard"]);
    assert!(result.status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&result.stdout).expect("valid JSON on stdout");
    let pops = &doc["populations"];
    assert!((pops["logical_one"].as_f64().unwrap() - 0.5).abs() < 0.01);
    assert!(pops["double_rydberg"].as_f64().unwrap() < 6e-3);
}

#[test]
fn optimize_pulse_prints_both_errors() {
    let result = atomchip(&["optimize-pulse"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&result.stdout).unwrap();
    assert!(doc["simulated_error"].is_string());
    assert!(doc["closed_form_error"].is_string());
}

#[test]
fn failing_claim_exits_one() {
    // starve the magnetic trap so the cloud misses every reference figure
    let dir = tempfile::tempdir().unwrap();
    let mut config = atomchip::config::ScenarioConfig::default();
    config.magnetic_trap.temperature = atomchip::units::Quantity::new(20.0, "uK");
    let path = dir.path().join("hot.json");
    std::fs::write(&path, config.to_json()).unwrap();
    let result = atomchip(&["report", "--config", path.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&result.stderr).contains("FAIL"));
}
