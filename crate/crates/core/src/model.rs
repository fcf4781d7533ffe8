//! Physical parameters, the truncated bare basis and the perturbed dressed
//! spectrum.
//!
//! Internally `ω_z ≡ 1`. [`build_params`] and [`ParamsBuilder`] accept the
//! qubit frequency in GHz, keep it for reporting, and normalize everything
//! else to ratios of `ω_z`.
//!
//! Drive-strength denominators are written `ω_z² − Ω²` everywhere. The
//! correlation-function discussion in the literature occasionally writes
//! `ω_c² − Ω²` for the same quantity; at the enforced resonance the two
//! coincide.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::{Matrix3c, Vector3c, C64};

/// Default threshold of the weak-drive guard `ξ/(ω_z − Ω)`.
pub const WEAK_DRIVE_THRESHOLD: f64 = 0.5;

/// Couplings above this ratio get a perturbative-validity warning.
pub const STRONG_COUPLING_WARNING: f64 = 0.5;

const RESONANCE_TOL: f64 = 1e-12;

/// Normalized model parameters (`ω_z = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    omega_z_ghz: Option<f64>,
    omega_c: f64,
    omega_z: f64,
    coupling: f64,
    drive: f64,
    weak_drive_threshold: f64,
    strong_drive_allowed: bool,
}

impl ModelParams {
    pub fn builder(omega_z_ghz: f64) -> ParamsBuilder {
        ParamsBuilder::new(omega_z_ghz)
    }

    /// Parameters given directly as ratios to `ω_z`, default guard.
    pub fn dimensionless(coupling: f64, drive: f64) -> Result<Self> {
        ParamsBuilder {
            omega_z_ghz: None,
            ..ParamsBuilder::new(1.0)
        }
        .coupling(coupling)
        .drive(drive)
        .build()
    }

    pub fn omega_z_ghz(&self) -> Option<f64> {
        self.omega_z_ghz
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }

    /// Atom–cavity coupling `Ω`.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Drive amplitude `ξ`.
    pub fn drive(&self) -> f64 {
        self.drive
    }

    /// `ξ / (ω_z − Ω)`, the quantity bounded by the weak-drive guard.
    pub fn drive_ratio(&self) -> f64 {
        self.drive / (self.omega_z - self.coupling)
    }

    pub fn weak_drive_threshold(&self) -> f64 {
        self.weak_drive_threshold
    }

    /// `ω_z² − Ω²`.
    pub fn detuning_product(&self) -> f64 {
        self.omega_z * self.omega_z - self.coupling * self.coupling
    }

    /// Same physics with a different drive; the guard settings are kept.
    pub fn with_drive(&self, drive: f64) -> Result<Self> {
        let mut p = *self;
        p.drive = drive;
        p.validate()?;
        Ok(p)
    }

    /// Non-fatal validity notes for this parameter point.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.drive_ratio() >= self.weak_drive_threshold {
            out.push(format!(
                "weak-drive guard overridden: xi/(omega_z - Omega) = {:.4} >= {}",
                self.drive_ratio(),
                self.weak_drive_threshold
            ));
        }
        if self.coupling > STRONG_COUPLING_WARNING {
            out.push(format!(
                "Omega/omega_z = {} is above {}: first-order dressed states lose accuracy as omega_z^2 - Omega^2 -> 0",
                self.coupling, STRONG_COUPLING_WARNING
            ));
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if !self.omega_c.is_finite() || (self.omega_c - self.omega_z).abs() > RESONANCE_TOL * self.omega_z {
            return Err(Error::OffResonance {
                omega_c: self.omega_c,
                omega_z: self.omega_z,
            });
        }
        if !(self.coupling > 0.0 && self.coupling < self.omega_z) {
            return Err(Error::CouplingOutOfRange(self.coupling / self.omega_z));
        }
        if !self.drive.is_finite() || self.drive < 0.0 {
            return Err(Error::NegativeDrive(self.drive));
        }
        if self.weak_drive_threshold.is_nan() || self.weak_drive_threshold <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "weak-drive threshold must be positive, got {}",
                self.weak_drive_threshold
            )));
        }
        let ratio = self.drive_ratio();
        if ratio >= self.weak_drive_threshold && !self.strong_drive_allowed {
            return Err(Error::StrongDrive {
                ratio,
                threshold: self.weak_drive_threshold,
            });
        }
        Ok(())
    }
}

/// Builder for [`ModelParams`] from physical units.
#[derive(Debug, Clone)]
pub struct ParamsBuilder {
    omega_z_ghz: Option<f64>,
    omega_c_ghz: Option<f64>,
    coupling_ratio: f64,
    drive_ratio: f64,
    threshold: f64,
    allow_strong_drive: bool,
}

impl ParamsBuilder {
    pub fn new(omega_z_ghz: f64) -> Self {
        Self {
            omega_z_ghz: Some(omega_z_ghz),
            omega_c_ghz: None,
            coupling_ratio: 0.0,
            drive_ratio: 0.0,
            threshold: WEAK_DRIVE_THRESHOLD,
            allow_strong_drive: false,
        }
    }

    /// Cavity frequency in GHz; defaults to the qubit frequency.
    pub fn cavity_ghz(mut self, omega_c_ghz: f64) -> Self {
        self.omega_c_ghz = Some(omega_c_ghz);
        self
    }

    /// `Ω / ω_z`.
    pub fn coupling(mut self, ratio: f64) -> Self {
        self.coupling_ratio = ratio;
        self
    }

    /// `ξ / ω_z`.
    pub fn drive(mut self, ratio: f64) -> Self {
        self.drive_ratio = ratio;
        self
    }

    pub fn weak_drive_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn allow_strong_drive(mut self, allow: bool) -> Self {
        self.allow_strong_drive = allow;
        self
    }

    pub fn build(self) -> Result<ModelParams> {
        let omega_c = match (self.omega_c_ghz, self.omega_z_ghz) {
            (Some(c), Some(z)) => {
                if !(z > 0.0 && z.is_finite()) {
                    return Err(Error::InvalidParameter(format!("omega_z must be positive, got {z} GHz")));
                }
                c / z
            }
            (Some(c), None) => c,
            (None, Some(z)) if !(z > 0.0 && z.is_finite()) => {
                return Err(Error::InvalidParameter(format!("omega_z must be positive, got {z} GHz")));
            }
            _ => 1.0,
        };
        let params = ModelParams {
            omega_z_ghz: self.omega_z_ghz,
            omega_c,
            omega_z: 1.0,
            coupling: self.coupling_ratio,
            drive: self.drive_ratio,
            weak_drive_threshold: self.threshold,
            strong_drive_allowed: self.allow_strong_drive,
        };
        params.validate()?;
        Ok(params)
    }
}

/// Normalize `(ω_z [GHz], Ω/ω_z, ξ/ω_z)` with the default guard.
pub fn build_params(omega_z_ghz: f64, coupling_ratio: f64, drive_ratio: f64) -> Result<ModelParams> {
    ParamsBuilder::new(omega_z_ghz)
        .coupling(coupling_ratio)
        .drive(drive_ratio)
        .build()
}

/// States of the truncated bare basis, in matrix index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BareState {
    /// `|g,0⟩`, index 0.
    G0,
    /// `|e,0⟩`, index 1.
    E0,
    /// `|g,1⟩`, index 2.
    G1,
}

impl BareState {
    pub const ALL: [BareState; 3] = [BareState::G0, BareState::E0, BareState::G1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            BareState::G0 => "|g,0>",
            BareState::E0 => "|e,0>",
            BareState::G1 => "|g,1>",
        }
    }

    pub fn ket(self) -> Vector3c {
        let mut v = Vector3c::zeros();
        v[self.index()] = C64::new(1.0, 0.0);
        v
    }
}

/// Cavity annihilation operator on the truncated bare basis (`a|g,1⟩ = |g,0⟩`).
pub fn annihilation() -> Matrix3c {
    let mut a = Matrix3c::zeros();
    a[(BareState::G0.index(), BareState::G1.index())] = C64::new(1.0, 0.0);
    a
}

/// Perturbed dressed spectrum to second order in energies and first order in
/// states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedSpectrum {
    pub params: ModelParams,
    pub e0: f64,
    pub e_minus: f64,
    pub e_plus: f64,
    /// `E− − E0`.
    pub omega_minus: f64,
    /// `E+ − E0`.
    pub omega_plus: f64,
    /// Corrected Rabi frequency `E+ − E−`.
    pub delta: f64,
    /// `ξ ω_z / (ω_z² − Ω²)`.
    pub eta: f64,
    pub v0: Vector3c,
    pub v_minus: Vector3c,
    pub v_plus: Vector3c,
}

impl DressedSpectrum {
    /// Energies in dressed index order `[E0, E−, E+]`.
    pub fn energies(&self) -> [f64; 3] {
        [self.e0, self.e_minus, self.e_plus]
    }

    /// Dressed vectors as the columns of a bare-basis matrix `V`.
    pub fn change_of_basis(&self) -> Matrix3c {
        Matrix3c::from_columns(&[self.v0, self.v_minus, self.v_plus])
    }

    /// First-order overlap matrix `V†`, rows `⟨E_α|`. This is the inverse of
    /// `V` up to `O(ξ²)` and maps bare amplitudes to dressed ones.
    pub fn overlap(&self) -> Matrix3c {
        self.change_of_basis().adjoint()
    }

    /// Dressed amplitudes `⟨E_α|ψ⟩` of a bare-basis ket.
    pub fn to_dressed_ket(&self, bare: &Vector3c) -> Vector3c {
        self.overlap() * bare
    }

    /// `V† A V`: a bare-basis operator in the dressed computational basis.
    pub fn to_dressed_operator(&self, bare: &Matrix3c) -> Matrix3c {
        let v = self.change_of_basis();
        v.adjoint() * bare * v
    }

    /// `V ρ V†`: a dressed density matrix in the bare basis.
    pub fn to_bare_density(&self, dressed: &Matrix3c) -> Matrix3c {
        let v = self.change_of_basis();
        v * dressed * v.adjoint()
    }

    /// Normalized dressed density matrix of a bare pure state.
    pub fn dressed_density(&self, bare: &Vector3c) -> Matrix3c {
        let c = self.to_dressed_ket(bare);
        let norm2 = c.norm_squared();
        c * c.adjoint() / C64::new(norm2, 0.0)
    }

    /// Diagonal Hamiltonian in the dressed computational basis.
    pub fn hamiltonian(&self) -> Matrix3c {
        Matrix3c::from_diagonal(&Vector3c::new(
            C64::new(self.e0, 0.0),
            C64::new(self.e_minus, 0.0),
            C64::new(self.e_plus, 0.0),
        ))
    }

    /// `2Ω − Δ = ξ²Ω/(ω_z² − Ω²)`.
    pub fn rabi_correction(&self) -> f64 {
        2.0 * self.params.coupling() - self.delta
    }
}

/// Energies and states of the three lowest dressed levels.
pub fn dressed_spectrum(params: &ModelParams) -> DressedSpectrum {
    let wz = params.omega_z();
    let w = params.coupling();
    let xi = params.drive();
    let d = params.detuning_product();

    let e0 = -wz / 2.0 - wz * xi * xi / d;
    let e_minus = wz / 2.0 - w + xi * xi / (2.0 * (wz - w));
    let e_plus = wz / 2.0 + w + xi * xi / (2.0 * (wz + w));

    let r = |x: f64| C64::new(x, 0.0);
    let g0 = BareState::G0.ket();
    let e0_bare = BareState::E0.ket();
    let g1 = BareState::G1.ket();
    let minus0 = (g1 - e0_bare) * r(FRAC_1_SQRT_2);
    let plus0 = (g1 + e0_bare) * r(FRAC_1_SQRT_2);

    let a_minus = xi * FRAC_1_SQRT_2 / (wz - w);
    let a_plus = xi * FRAC_1_SQRT_2 / (wz + w);
    let v0 = g0 - minus0 * r(a_minus) - plus0 * r(a_plus);
    let v_minus = minus0 + g0 * r(a_minus);
    let v_plus = plus0 + g0 * r(a_plus);

    DressedSpectrum {
        params: *params,
        e0,
        e_minus,
        e_plus,
        omega_minus: e_minus - e0,
        omega_plus: e_plus - e0,
        delta: e_plus - e_minus,
        eta: xi * wz / d,
        v0,
        v_minus,
        v_plus,
    }
}

/// Exact `H_JC + H_d` restricted to `{|g,0⟩, |e,0⟩, |g,1⟩}`.
pub fn bare_hamiltonian(params: &ModelParams) -> Matrix3c {
    let wz = params.omega_z();
    let r = |x: f64| C64::new(x, 0.0);
    let (g0, e0, g1) = (BareState::G0.index(), BareState::E0.index(), BareState::G1.index());
    let mut h = Matrix3c::zeros();
    h[(g0, g0)] = r(-wz / 2.0);
    h[(e0, e0)] = r(wz / 2.0);
    h[(g1, g1)] = r(params.omega_c() - wz / 2.0);
    h[(e0, g1)] = r(params.coupling());
    h[(g1, e0)] = r(params.coupling());
    h[(g0, g1)] = r(params.drive());
    h[(g1, g0)] = r(params.drive());
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn normalizes_paper_parameters() {
        let p = build_params(5.0, 0.2, 0.0).unwrap();
        assert_eq!(p.omega_z(), 1.0);
        assert_eq!(p.coupling(), 0.2);
        assert_eq!(p.drive(), 0.0);
        assert_eq!(p.omega_z_ghz(), Some(5.0));
        assert_eq!(build_params(5.0, 0.2, 0.02).unwrap().drive(), 0.02);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(matches!(build_params(5.0, 1.2, 0.1), Err(Error::CouplingOutOfRange(_))));
        assert!(matches!(build_params(5.0, 0.0, 0.1), Err(Error::CouplingOutOfRange(_))));
        assert!(matches!(build_params(5.0, 0.2, -0.1), Err(Error::NegativeDrive(_))));
        let off = ParamsBuilder::new(5.0).cavity_ghz(5.5).coupling(0.2).build();
        assert!(matches!(off, Err(Error::OffResonance { .. })));
    }

    #[test]
    fn weak_drive_guard_and_override() {
        // 0.5 / (1 - 0.2) = 0.625
        assert!(matches!(build_params(5.0, 0.2, 0.5), Err(Error::StrongDrive { .. })));
        let p = ParamsBuilder::new(5.0)
            .coupling(0.2)
            .drive(0.5)
            .allow_strong_drive(true)
            .build()
            .unwrap();
        assert_eq!(p.warnings().len(), 1);
        let p = ParamsBuilder::new(5.0).coupling(0.2).drive(0.5).weak_drive_threshold(0.7).build();
        assert!(p.is_ok());
    }

    #[test]
    fn strong_coupling_warns() {
        let p = ModelParams::dimensionless(0.99, 0.0).unwrap();
        assert!(p.warnings().iter().any(|w| w.contains("first-order")));
        assert!(ModelParams::dimensionless(0.2, 0.0).unwrap().warnings().is_empty());
    }

    #[test]
    fn driveless_triplet() {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.0).unwrap());
        assert_eq!(s.e0, -0.5);
        assert_eq!(s.e_minus, 0.5 - 0.2);
        assert_eq!(s.e_plus, 0.5 + 0.2);
        assert_eq!(s.delta, 0.7 - 0.3);
        assert_eq!(s.eta, 0.0);
        assert_eq!(s.v0, BareState::G0.ket());
        let h = FRAC_1_SQRT_2;
        assert_eq!(s.v_plus, Vector3c::new(C64::new(0.0, 0.0), C64::new(h, 0.0), C64::new(h, 0.0)));
        assert_eq!(s.v_minus, Vector3c::new(C64::new(0.0, 0.0), C64::new(-h, 0.0), C64::new(h, 0.0)));
    }

    #[test]
    fn driven_energies() {
        // ξ=0.1, Ω=0.2: E+ = 0.7 + 0.01/2.4, E− = 0.3 + 0.01/1.6, E0 = −0.5 − 0.01/0.96.
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1).unwrap());
        assert_relative_eq!(s.e_plus, 0.704_166_666_666_666_7, epsilon = 1e-15);
        assert_relative_eq!(s.e_minus, 0.306_25, epsilon = 1e-15);
        assert_relative_eq!(s.e0, -0.510_416_666_666_666_7, epsilon = 1e-15);
        assert_relative_eq!(s.eta, 0.104_166_666_666_666_7, epsilon = 1e-15);
        assert_relative_eq!(s.omega_plus, 1.214_583_333_333_333_3, epsilon = 1e-14);
        assert_relative_eq!(s.delta, 0.4 - 0.01 * 0.2 / 0.96, epsilon = 1e-15);
        assert_relative_eq!(s.rabi_correction(), 0.01 * 0.2 / 0.96, epsilon = 1e-15);
    }

    #[test]
    fn bare_hamiltonian_entries() {
        let h0 = bare_hamiltonian(&ModelParams::dimensionless(0.2, 0.0).unwrap());
        assert_eq!(h0, h0.adjoint());
        assert_eq!(h0[(0, 0)].re, -0.5);
        assert_eq!(h0[(1, 2)].re, 0.2);
        assert_eq!(h0[(0, 1)].norm() + h0[(0, 2)].norm(), 0.0);
        let h = bare_hamiltonian(&ModelParams::dimensionless(0.2, 0.1).unwrap());
        assert_eq!(h, h.adjoint());
        assert_eq!(h[(0, 2)].re, 0.1);
        assert_eq!(h[(2, 0)].re, 0.1);
    }

    #[test]
    fn annihilation_lowers_photon() {
        let a = annihilation();
        assert_eq!(a * BareState::G1.ket(), BareState::G0.ket());
        assert_eq!((a * BareState::E0.ket()).norm(), 0.0);
    }
}
