use crate::damping::RatePair;
use crate::liouvillian::Trajectory;
use crate::model::{BareState, DressedSpectrum};
use crate::DensityMatrix;

/// `ξ²Ω²/(ω_z² − Ω²)²`, prefactor of the fast `ω±` oscillations in `P_e`.
pub fn minute_amplitude(spectrum: &DressedSpectrum) -> f64 {
    let p = &spectrum.params;
    let eps = p.drive() * p.coupling() / p.detuning_product();
    eps * eps
}

/// Closed-form `P_e(t)` for the fully inverted start `|e,0⟩`:
///
/// ```text
/// P_e = ¼(e^{−γ−t/2} + e^{−γ+t/2}) + ½ e^{−(γ−+γ+)t/4} cos Δt
///     + ξ²Ω²/(ω_z²−Ω²)² [e^{−γ−t/4} cos ω−t + e^{−γ+t/4} cos ω+t]
/// ```
///
/// The formula is first order in the dressed states, so it overshoots 1 by
/// exactly `2ξ²Ω²/(ω_z²−Ω²)²` at `t = 0`; the value is returned unclamped.
pub fn excited_population_analytic(spectrum: &DressedSpectrum, rates: &RatePair, t: f64) -> f64 {
    let (gm, gp) = (rates.gamma_minus, rates.gamma_plus);
    let decay = 0.25 * ((-gm * t / 2.0).exp() + (-gp * t / 2.0).exp());
    let rabi = 0.5 * (-(gm + gp) * t / 4.0).exp() * (spectrum.delta * t).cos();
    let minute = minute_amplitude(spectrum)
        * ((-gm * t / 4.0).exp() * (spectrum.omega_minus * t).cos()
            + (-gp * t / 4.0).exp() * (spectrum.omega_plus * t).cos());
    decay + rabi + minute
}

/// `|e,0⟩⟨e,0|` mapped to the dressed basis and normalized to unit trace.
pub fn inverted_state(spectrum: &DressedSpectrum) -> DensityMatrix {
    spectrum.dressed_density(&BareState::E0.ket())
}

/// `⟨e,0| V ρ V† |e,0⟩` for a dressed-basis density matrix.
pub fn excited_population(rho: &DensityMatrix, spectrum: &DressedSpectrum) -> f64 {
    let u = spectrum.to_dressed_ket(&BareState::E0.ket());
    (u.adjoint() * rho * u)[(0, 0)].re
}

pub fn excited_population_numeric(trajectory: &Trajectory, spectrum: &DressedSpectrum) -> Vec<f64> {
    trajectory.map(|rho| excited_population(rho, spectrum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{dressed_spectrum, ModelParams};
    use approx::assert_relative_eq;

    #[test]
    fn bare_rabi_oscillation() {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.0).unwrap());
        let r = RatePair::zero();
        assert_eq!(excited_population_analytic(&s, &r, 0.0), 1.0);
        for t in [0.3, 2.0, 17.5, 100.0] {
            assert_relative_eq!(
                excited_population_analytic(&s, &r, t),
                (0.2 * t).cos().powi(2),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn minute_prefactor_for_fig1() {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1).unwrap());
        // 0.01 · 0.04 / 0.96²
        assert_relative_eq!(minute_amplitude(&s), 4.340_277_777_777_778e-4, epsilon = 1e-18);
        // ω+ + ω− = 2ω_z + 3ξ²ω_z/(ω_z² − Ω²)
        let carrier = s.omega_plus + s.omega_minus;
        assert_relative_eq!(carrier, 2.03125, epsilon = 1e-14);
    }

    #[test]
    fn steady_state_population_is_second_order() {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1).unwrap());
        let mut ss = DensityMatrix::zeros();
        ss[(0, 0)] = crate::C64::new(1.0, 0.0);
        let pe = excited_population(&ss, &s);
        assert_relative_eq!(pe, minute_amplitude(&s), epsilon = 1e-16);
        assert!(pe <= 1e-3);
    }

    #[test]
    fn inverted_start_population() {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1).unwrap());
        let rho = inverted_state(&s);
        assert_relative_eq!(rho.trace().re, 1.0, epsilon = 1e-15);
        let pe0 = excited_population(&rho, &s);
        assert!((pe0 - 1.0).abs() <= 2.0 * minute_amplitude(&s));
    }
}
