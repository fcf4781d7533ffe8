//! Physical observables: excited-state population, two-time correlations of
//! the cavity field, the quadrature noise spectrum and the qubit decoherence
//! factor.
//!
//! Each quantity has a closed form built from the damping-basis solution and
//! a numerical counterpart computed from a density matrix in the dressed
//! basis. Bare-basis observables are mapped with the first-order overlap
//! matrix `V†` of [`crate::model::DressedSpectrum::overlap`], without
//! renormalizing the dressed vectors.

mod correlation;
mod decoherence;
mod population;
mod spectrum;

pub use correlation::{correlation, correlation_regression, CorrelationKind, CorrelationSeries};
pub use decoherence::{
    coherence_numeric, d0_factor, decoherence_factor, decoherence_factor_from, delta_d,
    expansion_coefficients_qubit, rho_eg, rho_eg_from, InitialQubitState,
};
pub use population::{
    excited_population, excited_population_analytic, excited_population_numeric, inverted_state,
    minute_amplitude,
};
pub use spectrum::{lorentzian, spectrum_xx, vacuum_splitting, SpectralLine, SpectrumCurve};
