use thiserror::Error;

/// Errors raised by the library. CLI-specific failures live in [`crate::cli`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coupling ratio {0} must lie strictly inside (0, 1)")]
    CouplingOutOfRange(f64),

    #[error("cavity frequency {omega_c} differs from qubit frequency {omega_z}; only resonant operation is supported")]
    OffResonance { omega_c: f64, omega_z: f64 },

    #[error("drive {0} must be finite and non-negative")]
    NegativeDrive(f64),

    #[error("weak-drive guard: xi/(omega_z - Omega) = {ratio:.4} exceeds {threshold} (pass --allow-strong-drive to override)")]
    StrongDrive { ratio: f64, threshold: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid bath: {0}")]
    InvalidBath(String),

    #[error("direct-rate bath has no rate registered at omega = {0}")]
    UnregisteredFrequency(f64),

    #[error("not a physical density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid qubit state: {0}")]
    InvalidState(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("integration step {step:e} underflows for interval {interval:e}")]
    StepUnderflow { step: f64, interval: f64 },

    #[error("non-finite value at t = {0}")]
    NonFinite(f64),

    #[error("unknown correlation kind '{0}' (expected adag_a, a_a, adag_adag, a_adag or x_x)")]
    UnknownCorrelation(String),

    #[error("decoherence factor undefined: c_e * c_g = 0")]
    UndefinedDecoherence,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
