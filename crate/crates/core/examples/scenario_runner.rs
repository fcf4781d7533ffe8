//! Running a CLI scenario from code with an inline config.

use driven_jc::cli::{run_scenario, ConfigFile, Overrides, ResolvedConfig, Scenario};

fn main() {
    let config = ConfigFile::parse(
        r#"
        [model]
        coupling = 0.3
        drives = [0.05]

        [bath]
        gamma_minus = 0.01
        gamma_plus = 0.012

        [grid]
        t_max = 200.0
        n_points = 2001
        "#,
    )
    .expect("valid config");
    let overrides = Overrides {
        out_dir: Some(std::env::temp_dir().join("driven-jc-example")),
        ..Overrides::default()
    };
    let resolved = ResolvedConfig::resolve(Scenario::Validate, &config, &overrides).expect("valid parameters");
    let summary = run_scenario(&resolved).expect("run succeeds");
    for c in &summary.checks {
        println!("{:<26} {:.3e} <= {:.3e}  {}", c.name, c.value, c.tolerance, if c.passed { "ok" } else { "FAILED" });
    }
    println!("report in {}", summary.files[0].display());
}
