use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_driven-jc"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.toml");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn fig1_writes_reproducible_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[grid]\nt_max = 200.0\nn_points = 2001\n");
    let out = run(dir.path(), &["fig1", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    assert_eq!(column(&first, "Pe_analytic_xi0")[0], 1.0);
    for name in ["Pe_analytic_xi0.02", "Pe_oracle_xi0.02", "delta_Pe_xi0.1"] {
        assert_eq!(column(&first, name).len(), 2001);
    }
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig1.config.json")).unwrap()).unwrap();
    assert_eq!(sidecar["scenario"], "fig1");
    assert_eq!(sidecar["n_points"], 2001);

    run(dir.path(), &["fig1", "--config", &cfg]);
    let second = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    assert_eq!(first, second);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS pe_vs_oracle_xi0.1"));
}

#[test]
fn fig2_reports_peaks() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["fig2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let peaks = std::fs::read_to_string(dir.path().join("fig2_peaks.csv")).unwrap();
    let xi = column(&peaks, "xi");
    let split = column(&peaks, "splitting_measured");
    assert_eq!(xi, vec![0.0, 0.0, 0.2, 0.2]);
    assert!((split[0] - 0.4).abs() < 1e-4);
    assert!((split[2] - 0.391_666_666_666_666_7).abs() < 1e-4);
    assert!(dir.path().join("fig2_peaks.config.json").exists());
}

#[test]
fn fig3_and_fig4_write_their_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["fig3"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    for name in ["D0", "D_ratio0.1", "D_ratio1", "D_ratio100"] {
        assert!(column(&csv, name).iter().all(|v| v.is_finite() && *v >= 0.0));
    }

    let out = run(dir.path(), &["fig4"]);
    assert_ne!(out.status.code(), Some(2));
    let csv = std::fs::read_to_string(dir.path().join("fig4.csv")).unwrap();
    let zero = column(&csv, "dD_phi0pi");
    let half = column(&csv, "dD_phi0.5pi");
    let pi = column(&csv, "dD_phi1pi");
    assert!(half.iter().zip(&zero).any(|(a, b)| (a - b).abs() > 1e-3));
    assert!(half.iter().zip(&pi).any(|(a, b)| (a - b).abs() > 1e-3));
    let omega_t = column(&csv, "Omega_t");
    assert!((omega_t.last().unwrap() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn validate_exit_codes_and_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("validate_report.json")).unwrap()).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let cfg = write_config(dir.path(), "[bath]\ngamma_minus = 0.004\ngamma_plus = 0.004\n");
    let out = run(dir.path(), &["validate", "--config", &cfg]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));

    let cfg = write_config(dir.path(), "[model]\ncoupling = 0.99\n");
    let out = run(dir.path(), &["validate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weak-drive guard"));

    let cfg = write_config(dir.path(), "[model]\ncoupling = 0.99\ndrive = 0.001\n");
    let out = run(dir.path(), &["validate", "--config", &cfg]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Omega/omega_z = 0.99"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[model]\ncoupling = 0.2\nunknown_key = 1\n");
    assert_eq!(run(dir.path(), &["fig1", "--config", &cfg]).status.code(), Some(2));
    let cfg = write_config(dir.path(), "[grid]\nn_points = 1\n");
    assert_eq!(run(dir.path(), &["fig1", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["fig1", "--config", "/no/such/file.toml"]).status.code(), Some(2));
}

#[test]
fn json_output_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "[sweep]\nparameter = \"drive\"\nvalues = [0.0, 0.05, 0.1]\n[grid]\nt_max = 50.0\nn_points = 501\n",
    );
    let out = run(dir.path(), &["sweep", "--config", &cfg, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sweep.json")).unwrap()).unwrap();
    let columns = table["columns"].as_array().unwrap();
    assert_eq!(columns[0]["name"], "value");
    assert_eq!(columns[0]["values"].as_array().unwrap().len(), 3);
    for k in 0..3 {
        assert!(dir.path().join(format!("sweep_point_{k:03}.json")).exists());
        assert!(dir.path().join(format!("sweep_point_{k:03}.config.json")).exists());
    }
}
