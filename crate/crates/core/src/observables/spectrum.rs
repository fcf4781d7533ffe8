use std::f64::consts::PI;

use serde::Serialize;

use crate::damping::RatePair;
use crate::error::{Error, Result};
use crate::model::DressedSpectrum;

/// One Lorentzian component of the quadrature spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralLine {
    pub center: f64,
    pub half_width: f64,
    pub weight: f64,
}

/// `S_xx(ω)` sampled on a grid. The `ω = 0` delta of weight
/// `point_mass_weight` is not part of `density`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumCurve {
    pub omegas: Vec<f64>,
    pub density: Vec<f64>,
    pub point_mass_weight: f64,
    pub lines: [SpectralLine; 2],
}

/// Normalized Lorentzian of integral `weight`. A zero width is a delta and
/// contributes nothing to a sampled density.
pub fn lorentzian(omega: f64, line: &SpectralLine) -> f64 {
    if line.half_width == 0.0 {
        return 0.0;
    }
    let d = omega - line.center;
    line.weight / PI * line.half_width / (d * d + line.half_width * line.half_width)
}

/// Fourier transform of the `x_x` correlation:
///
/// ```text
/// S_xx(ω) = Σ± (1/2π) (γ±/4) / ((ω − ω±)² + (γ±/4)²) + 4η² δ(ω)
/// ```
pub fn spectrum_xx(spectrum: &DressedSpectrum, rates: &RatePair, omegas: &[f64]) -> Result<SpectrumCurve> {
    if omegas.is_empty() {
        return Err(Error::InvalidGrid("empty frequency grid".into()));
    }
    if let Some(w) = omegas.iter().find(|w| !w.is_finite()) {
        return Err(Error::InvalidGrid(format!("non-finite frequency {w}")));
    }
    let lines = [
        SpectralLine {
            center: spectrum.omega_minus,
            half_width: rates.gamma_minus / 4.0,
            weight: 0.5,
        },
        SpectralLine {
            center: spectrum.omega_plus,
            half_width: rates.gamma_plus / 4.0,
            weight: 0.5,
        },
    ];
    let density = omegas
        .iter()
        .map(|&w| lines.iter().map(|l| lorentzian(w, l)).sum())
        .collect();
    Ok(SpectrumCurve {
        omegas: omegas.to_vec(),
        density,
        point_mass_weight: 4.0 * spectrum.eta * spectrum.eta,
        lines,
    })
}

/// `ω+ − ω−`, the vacuum Rabi splitting including the drive correction.
pub fn vacuum_splitting(spectrum: &DressedSpectrum) -> f64 {
    spectrum.omega_plus - spectrum.omega_minus
}
