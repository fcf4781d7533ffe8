//! Dissipative dynamics of a weakly driven, resonant Jaynes–Cummings system.
//!
//! The three lowest dressed levels `|E0⟩, |E−⟩, |E+⟩` of the driven JC
//! Hamiltonian are obtained by first-order perturbation theory in the drive
//! `ξ`. A microscopic Lindblad generator with downward jumps `|E0⟩⟨E±|` is
//! diagonal in a set of nine *damping bases*, which gives closed-form time
//! evolution. Every closed form in [`damping`] and [`observables`] is checked
//! against the brute-force 9×9 superoperator in [`liouvillian`].
//!
//! Units: `ω_z ≡ 1`. Frequencies, rates and energies are in units of `ω_z`,
//! times in units of `1/ω_z`.
//!
//! Module map:
//!
//! - [`model`]: parameters, bare/dressed bases, perturbed spectrum.
//! - [`damping`]: damping bases, eigenvalues, expansion and analytic evolution.
//! - [`liouvillian`]: bath rates, exact superoperator, eigensolver, RK4.
//! - [`observables`]: Rabi oscillation, correlations, noise spectrum,
//!   decoherence factor.
//! - [`analysis`]: FFT line finding, peak finding, least-squares fits.
//! - [`validation`]: the invariant suite behind `driven-jc validate`.
//! - [`cli`]: scenario runner used by the `driven-jc` binary.

pub mod analysis;
pub mod cli;
pub mod damping;
pub mod error;
pub mod liouvillian;
pub mod model;
pub mod observables;
pub mod table;
pub mod validation;

mod linalg;

pub use damping::{
    build_damping_bases, evolve_analytic, expand_state, DampingBasisSet, ExpansionCoefficients,
    Level, RatePair,
};
pub use error::{Error, Result};
pub use liouvillian::{
    build_liouvillian, gamma_of, integrate, transition_rates, BathSpec, LiouvillianMatrix,
    OhmicBath, Trajectory,
};
pub use model::{bare_hamiltonian, build_params, dressed_spectrum, BareState, DressedSpectrum, ModelParams};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// 3×3 complex matrix; density matrices and operators on the truncated space.
pub type Matrix3c = nalgebra::Matrix3<C64>;

/// Length-3 complex amplitude vector.
pub type Vector3c = nalgebra::Vector3<C64>;

/// Density matrix in the dressed computational basis, index order `[0, −, +]`.
pub type DensityMatrix = Matrix3c;
