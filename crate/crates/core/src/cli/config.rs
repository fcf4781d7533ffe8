//! Scenario configuration: a TOML file of optional sections merged over the
//! per-scenario defaults.
//!
//! ```toml
//! [model]
//! omega_z_ghz = 5.0
//! coupling = 0.2          # Omega / omega_z  (or coupling_ghz)
//! drives = [0.02, 0.1]    # xi / omega_z     (or drive / drive_ghz)
//!
//! [bath]
//! kind = "direct"         # or "ohmic" with kappa, omega_cutoff, temperature
//! gamma_minus = 0.002
//! gamma_plus = 0.006
//!
//! [state]
//! ratio = 1.0             # c_e / c_g  (or c_g, c_e; ratios = [...])
//! phi = 0.0               # (phases = [...])
//!
//! [grid]
//! t_max = 1000.0
//! n_points = 10001
//!
//! [output]
//! format = "csv"
//! ```
//!
//! Rates, cutoff and temperature are in units of `ω_z`.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::linspace;
use crate::liouvillian::{BathSpec, OhmicBath};
use crate::model::ModelParams;
use crate::observables::InitialQubitState;

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Validate,
    Sweep,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig1 => "fig1",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::Fig4 => "fig4",
            Scenario::Validate => "validate",
            Scenario::Sweep => "sweep",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Drive,
    Coupling,
}

impl FromStr for SweepParameter {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "drive" => Ok(SweepParameter::Drive),
            "coupling" => Ok(SweepParameter::Coupling),
            other => Err(CliError::Config(format!(
                "sweep.parameter must be 'drive' or 'coupling', got '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub model: ModelSection,
    pub bath: Option<BathSection>,
    #[serde(default)]
    pub state: StateSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub omega_z_ghz: Option<f64>,
    pub omega_c_ghz: Option<f64>,
    pub coupling: Option<f64>,
    pub coupling_ghz: Option<f64>,
    pub drive: Option<f64>,
    pub drive_ghz: Option<f64>,
    pub drives: Option<Vec<f64>>,
    pub weak_drive_threshold: Option<f64>,
    pub allow_strong_drive: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSection {
    pub kind: Option<String>,
    pub gamma_minus: Option<f64>,
    pub gamma_plus: Option<f64>,
    pub kappa: Option<f64>,
    pub omega_cutoff: Option<f64>,
    pub temperature: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSection {
    pub c_g: Option<f64>,
    pub c_e: Option<f64>,
    pub ratio: Option<f64>,
    pub ratios: Option<Vec<f64>>,
    pub phi: Option<f64>,
    pub phases: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub t_max: Option<f64>,
    pub n_points: Option<usize>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub n_omega: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<Format>,
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: Option<String>,
    pub values: Option<Vec<f64>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub allow_strong_drive: bool,
}

/// Fully resolved run description; also written as the sidecar JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedConfig {
    pub scenario: Scenario,
    pub omega_z_ghz: f64,
    pub omega_c_ghz: f64,
    pub coupling: f64,
    pub drives: Vec<f64>,
    pub weak_drive_threshold: f64,
    pub allow_strong_drive: bool,
    pub bath: BathSpec,
    pub ratios: Vec<f64>,
    pub phases: Vec<f64>,
    pub t_max: f64,
    pub n_points: usize,
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_omega: usize,
    pub format: Format,
    pub out_dir: PathBuf,
    pub sweep_parameter: SweepParameter,
    pub sweep_values: Vec<f64>,
}

struct Defaults {
    coupling: f64,
    drives: Vec<f64>,
    bath: BathSpec,
    ratios: Vec<f64>,
    phases: Vec<f64>,
    t_max: Option<f64>,
    n_points: usize,
}

fn defaults(scenario: Scenario) -> Defaults {
    let direct = |m, p| BathSpec::Direct {
        gamma_minus: m,
        gamma_plus: p,
    };
    let base = Defaults {
        coupling: 0.2,
        drives: vec![0.1],
        bath: direct(0.002, 0.006),
        ratios: vec![1.0],
        phases: vec![0.0],
        t_max: Some(100.0),
        n_points: 1001,
    };
    match scenario {
        Scenario::Fig1 => Defaults {
            drives: vec![0.02, 0.1],
            t_max: Some(1000.0),
            n_points: 10001,
            ..base
        },
        Scenario::Fig2 => Defaults {
            drives: vec![0.0, 0.2],
            bath: BathSpec::Ohmic(OhmicBath {
                kappa: 0.5,
                omega_cutoff: 0.2,
                temperature: 0.0,
            }),
            ..base
        },
        Scenario::Fig3 => Defaults {
            coupling: 0.5,
            bath: direct(0.05, 0.055),
            ratios: vec![0.1, 1.0, 100.0],
            n_points: 2001,
            ..base
        },
        Scenario::Fig4 => Defaults {
            coupling: 0.5,
            bath: direct(0.05, 0.055),
            phases: vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI],
            t_max: None,
            n_points: 2001,
            ..base
        },
        Scenario::Validate => base,
        Scenario::Sweep => Defaults {
            t_max: Some(200.0),
            n_points: 2001,
            ..base
        },
    }
}

fn exclusive<T>(a: Option<T>, b: Option<T>, what: &str) -> Result<Option<T>, CliError> {
    match (a, b) {
        (Some(_), Some(_)) => Err(CliError::Config(format!("{what}: give only one of the alternatives"))),
        (a, b) => Ok(a.or(b)),
    }
}

fn resolve_bath(section: Option<&BathSection>, default: BathSpec) -> Result<BathSpec, CliError> {
    let Some(s) = section else {
        return Ok(default);
    };
    let default_kind = match default {
        BathSpec::Direct { .. } => "direct",
        BathSpec::Ohmic(_) => "ohmic",
    };
    let kind = s.kind.as_deref().unwrap_or(default_kind);
    let bath = match kind {
        "direct" => {
            if s.kappa.is_some() || s.omega_cutoff.is_some() || s.temperature.is_some() {
                return Err(CliError::Config("direct bath takes only gamma_minus and gamma_plus".into()));
            }
            let (dm, dp) = match default {
                BathSpec::Direct {
                    gamma_minus,
                    gamma_plus,
                } => (Some(gamma_minus), Some(gamma_plus)),
                BathSpec::Ohmic(_) => (None, None),
            };
            let gm = s.gamma_minus.or(dm);
            let gp = s.gamma_plus.or(dp);
            match (gm, gp) {
                (Some(gm), Some(gp)) => BathSpec::direct(gm, gp)?,
                _ => return Err(CliError::Config("direct bath needs gamma_minus and gamma_plus".into())),
            }
        }
        "ohmic" => {
            if s.gamma_minus.is_some() || s.gamma_plus.is_some() {
                return Err(CliError::Config("ohmic bath takes kappa, omega_cutoff and temperature".into()));
            }
            let d = match default {
                BathSpec::Ohmic(o) => o,
                BathSpec::Direct { .. } => OhmicBath {
                    kappa: 0.5,
                    omega_cutoff: 0.2,
                    temperature: 0.0,
                },
            };
            BathSpec::ohmic(
                s.kappa.unwrap_or(d.kappa),
                s.omega_cutoff.unwrap_or(d.omega_cutoff),
                s.temperature.unwrap_or(d.temperature),
            )?
        }
        other => return Err(CliError::Config(format!("bath.kind must be 'direct' or 'ohmic', got '{other}'"))),
    };
    Ok(bath)
}

fn finite_list(name: &str, values: &[f64]) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(CliError::Config(format!("{name} must not be empty")));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(CliError::Config(format!("{name} contains non-finite value {v}")));
    }
    Ok(())
}

impl ResolvedConfig {
    pub fn resolve(scenario: Scenario, file: &ConfigFile, overrides: &Overrides) -> Result<Self, CliError> {
        let d = defaults(scenario);
        let m = &file.model;
        let omega_z_ghz = m.omega_z_ghz.unwrap_or(5.0);
        if !(omega_z_ghz > 0.0 && omega_z_ghz.is_finite()) {
            return Err(CliError::Config(format!("omega_z_ghz must be positive, got {omega_z_ghz}")));
        }
        let coupling = exclusive(m.coupling, m.coupling_ghz.map(|g| g / omega_z_ghz), "model.coupling")?
            .unwrap_or(d.coupling);
        let single = exclusive(m.drive, m.drive_ghz.map(|g| g / omega_z_ghz), "model.drive")?;
        let drives = match exclusive(single.map(|x| vec![x]), m.drives.clone(), "model.drive/drives")? {
            Some(v) => v,
            None => d.drives,
        };
        finite_list("model.drives", &drives)?;

        let ratios = match (&file.state.c_g, &file.state.c_e) {
            (Some(g), Some(e)) => {
                if file.state.ratio.is_some() || file.state.ratios.is_some() {
                    return Err(CliError::Config("state: give c_g/c_e or ratio(s), not both".into()));
                }
                if *g <= 0.0 {
                    return Err(CliError::Config("state.c_g must be positive when used with c_e".into()));
                }
                vec![e / g]
            }
            (None, None) => exclusive(file.state.ratio.map(|r| vec![r]), file.state.ratios.clone(), "state.ratio")?
                .unwrap_or(d.ratios),
            _ => return Err(CliError::Config("state: c_g and c_e must be given together".into())),
        };
        finite_list("state.ratios", &ratios)?;
        let phases = exclusive(file.state.phi.map(|p| vec![p]), file.state.phases.clone(), "state.phi")?
            .unwrap_or(d.phases);
        finite_list("state.phases", &phases)?;

        let t_max = file
            .grid
            .t_max
            .or(d.t_max)
            .unwrap_or(4.0 * PI / coupling);
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(CliError::Config(format!("grid.t_max must be positive, got {t_max}")));
        }
        let n_points = file.grid.n_points.unwrap_or(d.n_points);
        if n_points < 2 {
            return Err(CliError::Config("grid.n_points must be at least 2".into()));
        }
        let omega_min = file.grid.omega_min.unwrap_or(0.6);
        let omega_max = file.grid.omega_max.unwrap_or(1.4);
        let n_omega = file.grid.n_omega.unwrap_or(8001);
        if !(omega_min.is_finite() && omega_max.is_finite() && omega_max > omega_min) || n_omega < 3 {
            return Err(CliError::Config("frequency grid needs omega_max > omega_min and n_omega >= 3".into()));
        }

        let sweep_parameter = file
            .sweep
            .parameter
            .as_deref()
            .map(str::parse)
            .transpose()?
            .unwrap_or(SweepParameter::Drive);
        let sweep_values = file.sweep.values.clone().unwrap_or_else(|| match sweep_parameter {
            SweepParameter::Drive => linspace(0.0, 0.2, 11),
            SweepParameter::Coupling => linspace(0.1, 0.5, 9),
        });
        finite_list("sweep.values", &sweep_values)?;

        let resolved = Self {
            scenario,
            omega_z_ghz,
            omega_c_ghz: m.omega_c_ghz.unwrap_or(omega_z_ghz),
            coupling,
            drives,
            weak_drive_threshold: m.weak_drive_threshold.unwrap_or(crate::model::WEAK_DRIVE_THRESHOLD),
            allow_strong_drive: overrides.allow_strong_drive || m.allow_strong_drive.unwrap_or(false),
            bath: resolve_bath(file.bath.as_ref(), d.bath)?,
            ratios,
            phases,
            t_max,
            n_points,
            omega_min,
            omega_max,
            n_omega,
            format: overrides.format.or(file.output.format).unwrap_or_default(),
            out_dir: overrides
                .out_dir
                .clone()
                .or_else(|| file.output.dir.clone())
                .unwrap_or_else(|| PathBuf::from("out")),
            sweep_parameter,
            sweep_values,
        };
        // Every parameter point the scenario will touch must be valid up front.
        for &xi in &resolved.drives {
            resolved.params_at(resolved.coupling, xi)?;
        }
        if scenario == Scenario::Sweep {
            for &v in &resolved.sweep_values {
                resolved.sweep_params(v)?;
            }
        }
        for &r in &resolved.ratios {
            InitialQubitState::from_ratio(r, 0.0)?;
        }
        Ok(resolved)
    }

    pub fn params_at(&self, coupling: f64, drive: f64) -> crate::Result<ModelParams> {
        ModelParams::builder(self.omega_z_ghz)
            .cavity_ghz(self.omega_c_ghz)
            .coupling(coupling)
            .drive(drive)
            .weak_drive_threshold(self.weak_drive_threshold)
            .allow_strong_drive(self.allow_strong_drive)
            .build()
    }

    /// Parameters for the first configured drive.
    pub fn params(&self) -> crate::Result<ModelParams> {
        self.params_at(self.coupling, self.drives[0])
    }

    pub fn sweep_params(&self, value: f64) -> crate::Result<ModelParams> {
        match self.sweep_parameter {
            SweepParameter::Drive => self.params_at(self.coupling, value),
            SweepParameter::Coupling => self.params_at(value, self.drives[0]),
        }
    }

    pub fn times(&self) -> Vec<f64> {
        linspace(0.0, self.t_max, self.n_points)
    }

    pub fn omegas(&self) -> Vec<f64> {
        linspace(self.omega_min, self.omega_max, self.n_omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(scenario: Scenario, text: &str) -> Result<ResolvedConfig, CliError> {
        ResolvedConfig::resolve(scenario, &ConfigFile::parse(text)?, &Overrides::default())
    }

    #[test]
    fn defaults_per_scenario() {
        let f1 = resolve(Scenario::Fig1, "").unwrap();
        assert_eq!(f1.drives, vec![0.02, 0.1]);
        assert_eq!((f1.t_max, f1.n_points), (1000.0, 10001));
        let f4 = resolve(Scenario::Fig4, "").unwrap();
        assert!((f4.t_max - 4.0 * PI / 0.5).abs() < 1e-12);
        assert_eq!(f4.phases.len(), 5);
        assert!(matches!(resolve(Scenario::Fig2, "").unwrap().bath, BathSpec::Ohmic(_)));
    }

    #[test]
    fn physical_units_are_normalized() {
        let r = resolve(Scenario::Validate, "[model]\nomega_z_ghz = 5.0\ncoupling_ghz = 1.0\ndrive_ghz = 0.1\n").unwrap();
        assert!((r.coupling - 0.2).abs() < 1e-15);
        assert!((r.drives[0] - 0.02).abs() < 1e-15);
    }

    #[test]
    fn config_errors() {
        assert!(matches!(resolve(Scenario::Fig1, "[model]\ncoupling = 1.2\n"), Err(CliError::Model(_))));
        assert!(matches!(resolve(Scenario::Fig1, "[model]\ncuppling = 0.2\n"), Err(CliError::Config(_))));
        assert!(matches!(resolve(Scenario::Fig1, "[grid]\nt_max = -1.0\n"), Err(CliError::Config(_))));
        assert!(matches!(resolve(Scenario::Fig1, "[bath]\nkind = \"flat\"\n"), Err(CliError::Config(_))));
        assert!(matches!(
            resolve(Scenario::Validate, "[model]\ncoupling = 0.99\n"),
            Err(CliError::Model(crate::Error::StrongDrive { .. }))
        ));
        assert!(matches!(
            resolve(Scenario::Fig1, "[model]\ndrive = 0.1\ndrives = [0.1]\n"),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn strong_drive_override() {
        let overrides = Overrides {
            allow_strong_drive: true,
            ..Overrides::default()
        };
        let file = ConfigFile::parse("[model]\ncoupling = 0.99\n").unwrap();
        let r = ResolvedConfig::resolve(Scenario::Validate, &file, &overrides).unwrap();
        assert!(!r.params().unwrap().warnings().is_empty());
    }

    #[test]
    fn bath_merging() {
        let r = resolve(Scenario::Fig2, "[bath]\ntemperature = 0.1\n").unwrap();
        assert_eq!(
            r.bath,
            BathSpec::Ohmic(OhmicBath {
                kappa: 0.5,
                omega_cutoff: 0.2,
                temperature: 0.1
            })
        );
        let r = resolve(Scenario::Fig1, "[bath]\ngamma_plus = 0.01\n").unwrap();
        assert_eq!(
            r.bath,
            BathSpec::Direct {
                gamma_minus: 0.002,
                gamma_plus: 0.01
            }
        );
    }
}
