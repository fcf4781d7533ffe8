//! Scenario-driven command line: `driven-jc <fig1|fig2|fig3|fig4|validate|sweep>`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a run
//! aborts, 2 for configuration errors (unreadable or malformed config,
//! invalid parameters, weak-drive guard).

pub mod config;
pub mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use config::{ConfigFile, Format, Overrides, ResolvedConfig, Scenario, SweepParameter};
pub use scenarios::{emit, run_scenario, RunSummary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("run failed: {0}")]
    Runtime(crate::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Model(_) => 2,
            CliError::Runtime(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "driven-jc", version, about = "Weakly driven Jaynes-Cummings dynamics in the damping basis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML scenario config; missing keys fall back to scenario defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Run even when xi/(omega_z - Omega) exceeds the weak-drive threshold.
    #[arg(long, global = true)]
    pub allow_strong_drive: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Excited-state population, closed form against the Liouvillian oracle.
    Fig1,
    /// Quadrature spectrum S_xx and its peaks.
    Fig2,
    /// Decoherence factor for several population ratios.
    Fig3,
    /// Change of the decoherence factor with the initial phase.
    Fig4,
    /// Full invariant suite at one parameter point.
    Validate,
    /// Parameter sweep, one worker per point.
    Sweep,
}

impl Command {
    pub fn scenario(self) -> Scenario {
        match self {
            Command::Fig1 => Scenario::Fig1,
            Command::Fig2 => Scenario::Fig2,
            Command::Fig3 => Scenario::Fig3,
            Command::Fig4 => Scenario::Fig4,
            Command::Validate => Scenario::Validate,
            Command::Sweep => Scenario::Sweep,
        }
    }
}

/// Resolve the configuration for a parsed command line.
pub fn resolve(cli: &Cli) -> Result<ResolvedConfig, CliError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let overrides = Overrides {
        out_dir: cli.out.clone(),
        format: cli.format,
        allow_strong_drive: cli.allow_strong_drive,
    };
    ResolvedConfig::resolve(cli.command.scenario(), &file, &overrides)
}

fn report(scenario: Scenario, summary: &RunSummary) {
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    for (name, value) in &summary.metrics {
        println!("{scenario}: {name} = {value:.10e}");
    }
    for c in &summary.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{scenario}: {tag} {} = {:.3e} (tolerance {:.3e})", c.name, c.value, c.tolerance);
    }
    for f in &summary.files {
        println!("{scenario}: wrote {}", f.display());
    }
}

pub fn run(cli: &Cli) -> ExitCode {
    let cfg = match resolve(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run_scenario(&cfg) {
        Ok(summary) => {
            report(cfg.scenario, &summary);
            if summary.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code().max(1))
        }
    }
}

pub fn main() -> ExitCode {
    run(&Cli::parse())
}
