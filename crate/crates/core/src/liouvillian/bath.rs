//! Bath models: direct decay rates or an Ohmic spectral density with a
//! KMS-consistent negative-frequency branch.

use serde::{Deserialize, Serialize};

use crate::damping::RatePair;
use crate::error::{Error, Result};
use crate::model::DressedSpectrum;

/// Ohmic bath `γ(ω) = κ ω exp(−ω/ω_C)` for `ω > 0`.
///
/// Negative frequencies follow the KMS condition
/// `γ(−|ω|) = exp(−|ω|/T) γ(|ω|)` with `k_B ≡ 1`; at `T = 0` upward rates
/// vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OhmicBath {
    pub kappa: f64,
    pub omega_cutoff: f64,
    pub temperature: f64,
}

impl OhmicBath {
    pub fn new(kappa: f64, omega_cutoff: f64, temperature: f64) -> Result<Self> {
        let bath = Self {
            kappa,
            omega_cutoff,
            temperature,
        };
        bath.validate()?;
        Ok(bath)
    }

    fn validate(&self) -> Result<()> {
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return Err(Error::InvalidBath(format!("kappa must be >= 0, got {}", self.kappa)));
        }
        if !(self.omega_cutoff.is_finite() && self.omega_cutoff > 0.0) {
            return Err(Error::InvalidBath(format!(
                "omega_cutoff must be > 0, got {}",
                self.omega_cutoff
            )));
        }
        if self.temperature.is_nan() || self.temperature < 0.0 {
            return Err(Error::InvalidBath(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        Ok(())
    }

    pub fn gamma(&self, omega: f64) -> f64 {
        if omega > 0.0 {
            self.kappa * omega * (-omega / self.omega_cutoff).exp()
        } else if omega < 0.0 {
            if self.temperature == 0.0 {
                0.0
            } else {
                let w = -omega;
                (-w / self.temperature).exp() * self.gamma(w)
            }
        } else {
            0.0
        }
    }
}

/// Environment specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BathSpec {
    /// Fixed rates attached to the two downward transitions `E± → E0`.
    Direct { gamma_minus: f64, gamma_plus: f64 },
    Ohmic(OhmicBath),
}

impl BathSpec {
    pub fn direct(gamma_minus: f64, gamma_plus: f64) -> Result<Self> {
        RatePair::new(gamma_minus, gamma_plus)?;
        Ok(BathSpec::Direct {
            gamma_minus,
            gamma_plus,
        })
    }

    pub fn ohmic(kappa: f64, omega_cutoff: f64, temperature: f64) -> Result<Self> {
        Ok(BathSpec::Ohmic(OhmicBath::new(kappa, omega_cutoff, temperature)?))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BathSpec::Direct {
                gamma_minus,
                gamma_plus,
            } => RatePair::new(*gamma_minus, *gamma_plus).map(|_| ()),
            BathSpec::Ohmic(o) => o.validate(),
        }
    }
}

fn same_frequency(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// `γ(ω)` for the given bath. Direct-rate baths only know the two
/// transitions `ω±` of `spectrum`; any other frequency is an error.
pub fn gamma_of(omega: f64, bath: &BathSpec, spectrum: &DressedSpectrum) -> Result<f64> {
    match bath {
        BathSpec::Ohmic(o) => Ok(o.gamma(omega)),
        BathSpec::Direct {
            gamma_minus,
            gamma_plus,
        } => {
            if same_frequency(omega, spectrum.omega_minus) {
                Ok(*gamma_minus)
            } else if same_frequency(omega, spectrum.omega_plus) {
                Ok(*gamma_plus)
            } else {
                Err(Error::UnregisteredFrequency(omega))
            }
        }
    }
}

/// `γ± = γ(E± − E0)` at the perturbed transition frequencies.
pub fn transition_rates(spectrum: &DressedSpectrum, bath: &BathSpec) -> Result<RatePair> {
    bath.validate()?;
    RatePair::new(
        gamma_of(spectrum.omega_minus, bath, spectrum)?,
        gamma_of(spectrum.omega_plus, bath, spectrum)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{dressed_spectrum, ModelParams};
    use approx::assert_relative_eq;

    #[test]
    fn ohmic_values() {
        let b = OhmicBath::new(0.01, 0.2, 0.0).unwrap();
        assert_relative_eq!(b.gamma(1.0), 0.01 * (-5.0_f64).exp(), epsilon = 1e-18);
        assert_relative_eq!(b.gamma(1.0), 6.737_946_999_085_467e-5, epsilon = 1e-17);
        assert_eq!(b.gamma(-1.0), 0.0);
        assert_eq!(b.gamma(0.0), 0.0);
    }

    #[test]
    fn kms_ratio() {
        let b = OhmicBath::new(0.3, 0.2, 0.05).unwrap();
        for w in [0.01, 0.3, 1.0, 2.5] {
            assert_eq!(b.gamma(-w), (-w / 0.05).exp() * b.gamma(w));
        }
    }

    #[test]
    fn invalid_baths() {
        assert!(OhmicBath::new(-1.0, 0.2, 0.0).is_err());
        assert!(OhmicBath::new(1.0, 0.0, 0.0).is_err());
        assert!(OhmicBath::new(1.0, 0.2, -1.0).is_err());
        assert!(BathSpec::direct(0.1, -0.1).is_err());
    }

    #[test]
    fn direct_rates_registered_only_at_transitions() {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1).unwrap());
        let bath = BathSpec::direct(0.002, 0.006).unwrap();
        assert_eq!(gamma_of(s.omega_minus, &bath, &s).unwrap(), 0.002);
        assert_eq!(gamma_of(s.omega_plus, &bath, &s).unwrap(), 0.006);
        assert!(matches!(gamma_of(1.0, &bath, &s), Err(Error::UnregisteredFrequency(_))));
        assert_eq!(transition_rates(&s, &bath).unwrap(), RatePair::new(0.002, 0.006).unwrap());
    }

    #[test]
    fn ohmic_transition_rates() {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.0).unwrap());
        let bath = BathSpec::ohmic(0.5, 0.2, 0.0).unwrap();
        let r = transition_rates(&s, &bath).unwrap();
        assert_eq!(r.gamma_minus, 0.5 * 0.8 * (-0.8_f64 / 0.2).exp());
        assert_eq!(r.gamma_plus, 0.5 * 1.2 * (-1.2_f64 / 0.2).exp());
        assert!(r.gamma_plus < r.gamma_minus);
    }
}
