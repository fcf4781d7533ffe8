use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::damping::{build_damping_bases, ExpansionCoefficients, Level, RatePair};
use crate::error::{Error, Result};
use crate::model::{BareState, DressedSpectrum};
use crate::{DensityMatrix, Vector3c, C64};

/// `c_g e^{iφ}|g,0⟩ + c_e|e,0⟩` with real, normalized `c_g, c_e ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InitialQubitState {
    c_g: f64,
    c_e: f64,
    phi: f64,
}

impl InitialQubitState {
    /// Amplitudes are rescaled to unit norm.
    pub fn new(c_g: f64, c_e: f64, phi: f64) -> Result<Self> {
        if !(c_g.is_finite() && c_e.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidState(format!("non-finite amplitudes ({c_g}, {c_e}, {phi})")));
        }
        if c_g < 0.0 || c_e < 0.0 {
            return Err(Error::InvalidState(format!(
                "amplitudes must be non-negative, got c_g={c_g}, c_e={c_e}; put signs in phi"
            )));
        }
        let norm = c_g.hypot(c_e);
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        Ok(Self {
            c_g: c_g / norm,
            c_e: c_e / norm,
            phi,
        })
    }

    /// State with `c_e/c_g = ratio`.
    pub fn from_ratio(ratio: f64, phi: f64) -> Result<Self> {
        if !ratio.is_finite() || ratio < 0.0 {
            return Err(Error::InvalidState(format!("ratio c_e/c_g must be finite and non-negative, got {ratio}")));
        }
        Self::new(1.0, ratio, phi)
    }

    pub fn c_g(&self) -> f64 {
        self.c_g
    }

    pub fn c_e(&self) -> f64 {
        self.c_e
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        Self { phi, ..*self }
    }

    pub fn bare_ket(&self) -> Vector3c {
        BareState::G0.ket() * C64::from_polar(self.c_g, self.phi) + BareState::E0.ket() * C64::new(self.c_e, 0.0)
    }

    /// Normalized dressed-basis density of the initial state.
    pub fn dressed_density(&self, spectrum: &DressedSpectrum) -> DensityMatrix {
        spectrum.dressed_density(&self.bare_ket())
    }
}

/// First-order damping-basis coefficients of the pure initial state.
///
/// ```text
/// M_00 = 1
/// M_±± = ½(c_e² ± 2ξ cos φ/(ω_z ± Ω) c_e c_g)
/// M_0± = (1/√2)(±e^{iφ} c_e c_g + ξ c_g²/(ω_z ± Ω) ± ξΩ/(ω_z² − Ω²) c_e²)
/// M_+− = ½(−c_e² + 2ξ(Ω cos φ − iω_z sin φ)/(ω_z² − Ω²) c_e c_g)
/// ```
///
/// `M_00` is the trace of the state, since only `ρ_00` carries trace.
pub fn expansion_coefficients_qubit(state: &InitialQubitState, spectrum: &DressedSpectrum) -> ExpansionCoefficients {
    let p = &spectrum.params;
    let (wz, om, xi) = (p.omega_z(), p.coupling(), p.drive());
    let d = p.detuning_product();
    let (cg, ce, phi) = (state.c_g, state.c_e, state.phi);
    let sign = |l: Level| if l == Level::Plus { 1.0 } else { -1.0 };
    let diag = |l: Level| {
        let s = sign(l);
        0.5 * (ce * ce + s * 2.0 * xi * phi.cos() / (wz + s * om) * ce * cg)
    };
    let ground_row = |l: Level| {
        let s = sign(l);
        (C64::from_polar(s * ce * cg, phi) + xi * cg * cg / (wz + s * om) + s * om * xi / d * ce * ce)
            * FRAC_1_SQRT_2
    };
    let plus_minus = C64::new(-ce * ce + 2.0 * xi * om * phi.cos() / d * ce * cg, -2.0 * xi * wz * phi.sin() / d * ce * cg) * 0.5;
    ExpansionCoefficients::from_fn(|a, b| match (a, b) {
        (Level::Ground, Level::Ground) => C64::new(1.0, 0.0),
        (Level::Ground, l) => ground_row(l),
        (l, Level::Ground) => ground_row(l).conj(),
        (Level::Plus, Level::Minus) => plus_minus,
        (Level::Minus, Level::Plus) => plus_minus.conj(),
        (l, _) => C64::new(diag(l), 0.0),
    })
}

/// `ρ_eg(t)` from the four-line first-order expression in the damping-basis
/// coefficients of `state`.
pub fn rho_eg(state: &InitialQubitState, spectrum: &DressedSpectrum, rates: &RatePair, t: f64) -> C64 {
    rho_eg_from(&expansion_coefficients_qubit(state, spectrum), spectrum, rates, t)
}

/// Same expression for arbitrary coefficients.
pub fn rho_eg_from(m: &ExpansionCoefficients, spectrum: &DressedSpectrum, rates: &RatePair, t: f64) -> C64 {
    use Level::{Ground as G, Minus as Mi, Plus as Pl};
    let p = &spectrum.params;
    let (wz, om, xi) = (p.omega_z(), p.coupling(), p.drive());
    let bases = build_damping_bases(spectrum, rates);
    let term = |a: Level, b: Level| m[(a, b)] * (bases.eigenvalue(a, b) * t).exp();
    (term(Pl, G) - term(Mi, G)) * FRAC_1_SQRT_2
        + (term(G, G) - term(Pl, Pl) - term(Mi, Mi)) * (om * xi / p.detuning_product())
        + (term(Pl, Mi) - term(Mi, Mi)) * (xi / (2.0 * (wz - om)))
        + (term(Pl, Pl) - term(Mi, Pl)) * (xi / (2.0 * (wz + om)))
}

/// `⟨e,0| V ρ V† |g,0⟩` for a dressed-basis density matrix.
pub fn coherence_numeric(rho: &DensityMatrix, spectrum: &DressedSpectrum) -> C64 {
    let u = spectrum.to_dressed_ket(&BareState::E0.ket());
    let w = spectrum.to_dressed_ket(&BareState::G0.ket());
    (u.adjoint() * rho * w)[(0, 0)]
}

/// `|ρ_eg|/(c_e c_g)` for a precomputed coherence series.
pub fn decoherence_factor_from(coherence: &[C64], state: &InitialQubitState) -> Result<Vec<f64>> {
    let norm = state.c_e * state.c_g;
    if norm == 0.0 {
        return Err(Error::UndefinedDecoherence);
    }
    Ok(coherence.iter().map(|z| z.norm() / norm).collect())
}

/// `D(t) = |ρ_eg(t)|/(c_e c_g)`.
pub fn decoherence_factor(
    state: &InitialQubitState,
    spectrum: &DressedSpectrum,
    rates: &RatePair,
    times: &[f64],
) -> Result<Vec<f64>> {
    if state.c_e * state.c_g == 0.0 {
        return Err(Error::UndefinedDecoherence);
    }
    let coeffs = expansion_coefficients_qubit(state, spectrum);
    let coherence: Vec<C64> = times.iter().map(|&t| rho_eg_from(&coeffs, spectrum, rates, t)).collect();
    decoherence_factor_from(&coherence, state)
}

/// Undriven decoherence factor
///
/// ```text
/// D⁰(t)² = ¼(e^{−γ+t/4} − e^{−γ−t/4})² + e^{−(γ++γ−)t/4} cos²(Ωt)
/// ```
pub fn d0_factor(coupling: f64, rates: &RatePair, t: f64) -> f64 {
    let ep = (-rates.gamma_plus * t / 4.0).exp();
    let em = (-rates.gamma_minus * t / 4.0).exp();
    let c = (coupling * t).cos();
    (0.25 * (ep - em).powi(2) + ep * em * c * c).sqrt()
}

/// `δD(t) = D(t) − D⁰(t)`.
pub fn delta_d(state: &InitialQubitState, spectrum: &DressedSpectrum, rates: &RatePair, times: &[f64]) -> Result<Vec<f64>> {
    let om = spectrum.params.coupling();
    let d = decoherence_factor(state, spectrum, rates, times)?;
    Ok(d.into_iter()
        .zip(times)
        .map(|(v, &t)| v - d0_factor(om, rates, t))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::damping::expand_state;
    use crate::model::{dressed_spectrum, ModelParams};

    fn spec(xi: f64) -> DressedSpectrum {
        dressed_spectrum(&ModelParams::dimensionless(0.2, xi).unwrap())
    }

    #[test]
    fn state_validation() {
        assert!(InitialQubitState::new(0.0, 0.0, 0.0).is_err());
        assert!(InitialQubitState::new(-1.0, 1.0, 0.0).is_err());
        assert!(InitialQubitState::from_ratio(f64::NAN, 0.0).is_err());
        let s = InitialQubitState::from_ratio(100.0, 0.3).unwrap();
        assert!((s.c_e() / s.c_g() - 100.0).abs() < 1e-10);
        assert!((s.c_e().hypot(s.c_g()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverted_state_coefficients() {
        let m = expansion_coefficients_qubit(&InitialQubitState::new(0.0, 1.0, 0.7).unwrap(), &spec(0.1));
        assert_eq!(m[(Level::Plus, Level::Plus)], C64::new(0.5, 0.0));
        assert_eq!(m[(Level::Minus, Level::Minus)], C64::new(0.5, 0.0));
        assert_eq!(m[(Level::Plus, Level::Minus)], C64::new(-0.5, 0.0));
    }

    #[test]
    fn plus_minus_coefficient_at_quarter_phase() {
        let state = InitialQubitState::new(1.0, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        let m = expansion_coefficients_qubit(&state, &spec(0.1));
        // ½(−½ − 2·0.1·(−i)/0.96·½) with cos φ = 0
        let expected = C64::new(-0.25, -0.1 / 0.96 / 2.0);
        assert!((m[(Level::Plus, Level::Minus)] - expected).norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_linear_solve_to_second_order() {
        let r = RatePair::new(0.05, 0.055).unwrap();
        let mut errs = Vec::new();
        for xi in [0.02, 0.04] {
            let s = spec(xi);
            let state = InitialQubitState::new(0.6, 0.8, 1.1).unwrap();
            let bases = build_damping_bases(&s, &r);
            let solved = expand_state(&state.dressed_density(&s), &bases).unwrap();
            errs.push(expansion_coefficients_qubit(&state, &s).max_distance(&solved));
        }
        assert!(errs[0] < 1e-3);
        let order = (errs[1] / errs[0]).log2();
        assert!(order > 1.8, "order {order}");
    }

    #[test]
    fn undriven_reduction() {
        let s = spec(0.0);
        let r = RatePair::new(0.05, 0.055).unwrap();
        let state = InitialQubitState::new(0.3, 0.9, 2.0).unwrap();
        let times: Vec<f64> = (0..200).map(|k| 0.37 * k as f64).collect();
        let d = decoherence_factor(&state, &s, &r, &times).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-15);
        for (v, &t) in d.iter().zip(&times) {
            assert!((v - d0_factor(0.2, &r, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn undefined_for_basis_states() {
        let s = spec(0.1);
        let r = RatePair::zero();
        let state = InitialQubitState::new(1.0, 0.0, 0.0).unwrap();
        assert!(matches!(decoherence_factor(&state, &s, &r, &[0.0]), Err(Error::UndefinedDecoherence)));
    }
}
