//! Damping bases of the dressed-state Liouvillian and the analytic formal
//! solution `ρ(t) = Σ M_αβ exp(λ_αβ t) ρ_αβ`.
//!
//! All matrices here live in the dressed computational basis, index order
//! `[0, −, +]`. The bases are
//!
//! ```text
//! ρ_00 = |E0⟩⟨E0|
//! ρ_αβ = |E_α⟩⟨E_β| − δ_αβ |E0⟩⟨E0|      (α, β) ≠ (0, 0)
//! ```
//!
//! and their eigenvalues are `λ_αβ = −i(E_α − E_β) + decay(α, β)` with
//! `decay(α, α) = −γ_α/2` and `decay(α, β) = −(γ_α + γ_β)/4` otherwise
//! (`γ_0 = 0`). The imaginary parts are taken from the dressed energy
//! differences rather than from an expanded series, so the eigenrelation is
//! exact for the generator built by [`crate::liouvillian`].

use std::fmt;
use std::ops::Index;

use nalgebra::LU;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix9c, Vector9c};
use crate::model::DressedSpectrum;
use crate::{DensityMatrix, Matrix3c, C64};

/// Tolerance for accepting a matrix as a density matrix.
pub const DENSITY_TOL: f64 = 1e-9;

/// Dressed level label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Level {
    /// `|E0⟩`
    Ground,
    /// `|E−⟩`
    Minus,
    /// `|E+⟩`
    Plus,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Ground, Level::Minus, Level::Plus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Level::Ground => "0",
            Level::Minus => "-",
            Level::Plus => "+",
        }
    }

    /// All nine `(α, β)` pairs, row-major.
    pub fn pairs() -> impl Iterator<Item = (Level, Level)> {
        Level::ALL
            .into_iter()
            .flat_map(|a| Level::ALL.into_iter().map(move |b| (a, b)))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Downward decay rates `γ± = γ(E± − E0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePair {
    pub gamma_minus: f64,
    pub gamma_plus: f64,
}

impl RatePair {
    pub fn new(gamma_minus: f64, gamma_plus: f64) -> Result<Self> {
        for (name, g) in [("gamma_minus", gamma_minus), ("gamma_plus", gamma_plus)] {
            if !(g.is_finite() && g >= 0.0) {
                return Err(Error::InvalidBath(format!("{name} must be finite and >= 0, got {g}")));
            }
        }
        Ok(Self { gamma_minus, gamma_plus })
    }

    pub fn zero() -> Self {
        Self {
            gamma_minus: 0.0,
            gamma_plus: 0.0,
        }
    }

    /// Decay rate out of `level` (zero for the ground level).
    pub fn gamma(&self, level: Level) -> f64 {
        match level {
            Level::Ground => 0.0,
            Level::Minus => self.gamma_minus,
            Level::Plus => self.gamma_plus,
        }
    }

    /// Equal rates make `λ_−− = λ_++` and collapse other distinctions.
    pub fn is_degenerate(&self) -> bool {
        self.gamma_minus == self.gamma_plus
    }

    pub fn warnings(&self) -> Vec<String> {
        if self.is_degenerate() {
            vec![format!(
                "gamma_plus = gamma_minus = {}: lambda_-- and lambda_++ coincide (degenerate Liouvillian spectrum)",
                self.gamma_plus
            )]
        } else {
            Vec::new()
        }
    }
}

/// Real part of `λ_αβ`.
pub fn decay(rates: &RatePair, a: Level, b: Level) -> f64 {
    if a == b {
        -rates.gamma(a) / 2.0
    } else {
        -(rates.gamma(a) + rates.gamma(b)) / 4.0
    }
}

/// The nine damping bases with their Liouvillian eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct DampingBasisSet {
    bases: [[Matrix3c; 3]; 3],
    eigenvalues: [[C64; 3]; 3],
}

impl DampingBasisSet {
    pub fn basis(&self, a: Level, b: Level) -> &Matrix3c {
        &self.bases[a.index()][b.index()]
    }

    pub fn eigenvalue(&self, a: Level, b: Level) -> C64 {
        self.eigenvalues[a.index()][b.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Level, Level), &Matrix3c, C64)> + '_ {
        Level::pairs().map(move |(a, b)| ((a, b), self.basis(a, b), self.eigenvalue(a, b)))
    }

    /// 9×9 matrix whose columns are the vectorized bases, row-major pair order.
    pub fn vectorized(&self) -> Matrix9c {
        let mut m = Matrix9c::zeros();
        for (k, (_, basis, _)) in self.iter().enumerate() {
            m.set_column(k, &linalg::vectorize(basis));
        }
        m
    }

    /// 2-norm condition number of [`Self::vectorized`].
    pub fn condition_number(&self) -> f64 {
        linalg::condition_number(&self.vectorized())
    }
}

/// Build `ρ_αβ` and `λ_αβ` from the dressed energies and decay rates.
pub fn build_damping_bases(spectrum: &DressedSpectrum, rates: &RatePair) -> DampingBasisSet {
    let energies = spectrum.energies();
    let unit = |i: usize, j: usize| {
        let mut m = Matrix3c::zeros();
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    };
    let projector0 = unit(0, 0);
    let mut bases = [[Matrix3c::zeros(); 3]; 3];
    let mut eigenvalues = [[C64::new(0.0, 0.0); 3]; 3];
    for (a, b) in Level::pairs() {
        let (i, j) = (a.index(), b.index());
        bases[i][j] = if i == j && a != Level::Ground {
            unit(i, j) - projector0
        } else {
            unit(i, j)
        };
        eigenvalues[i][j] = C64::new(decay(rates, a, b), -(energies[i] - energies[j]));
    }
    DampingBasisSet { bases, eigenvalues }
}

/// Coefficients `M_αβ` of a state in the damping bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCoefficients {
    m: [[C64; 3]; 3],
}

impl ExpansionCoefficients {
    pub fn from_fn(mut f: impl FnMut(Level, Level) -> C64) -> Self {
        let mut m = [[C64::new(0.0, 0.0); 3]; 3];
        for (a, b) in Level::pairs() {
            m[a.index()][b.index()] = f(a, b);
        }
        Self { m }
    }

    pub fn get(&self, a: Level, b: Level) -> C64 {
        self.m[a.index()][b.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Level, Level), C64)> + '_ {
        Level::pairs().map(move |(a, b)| ((a, b), self.get(a, b)))
    }

    /// `max |M_βα − conj(M_αβ)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        Level::pairs()
            .map(|(a, b)| (self.get(b, a) - self.get(a, b).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M_αβ − other_αβ|`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        Level::pairs()
            .map(|(a, b)| (self.get(a, b) - other.get(a, b)).norm())
            .fold(0.0, f64::max)
    }

    /// `Σ M_αβ ρ_αβ`.
    pub fn reconstruct(&self, bases: &DampingBasisSet) -> DensityMatrix {
        self.iter()
            .map(|((a, b), m)| bases.basis(a, b) * m)
            .fold(Matrix3c::zeros(), |acc, x| acc + x)
    }
}

impl Index<(Level, Level)> for ExpansionCoefficients {
    type Output = C64;

    fn index(&self, (a, b): (Level, Level)) -> &C64 {
        &self.m[a.index()][b.index()]
    }
}

/// Check that `rho` is Hermitian, trace one and positive semidefinite.
pub fn check_density(rho: &DensityMatrix, tol: f64) -> Result<()> {
    if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidDensity("non-finite entry".into()));
    }
    let herm = linalg::hermiticity_defect(rho);
    if herm > tol {
        return Err(Error::InvalidDensity(format!("not Hermitian (defect {herm:e})")));
    }
    let trace = rho.trace();
    if (trace - C64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::InvalidDensity(format!("trace {trace} != 1")));
    }
    let min = linalg::min_hermitian_eigenvalue(rho);
    if min < -tol {
        return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

/// Solve `Σ M_αβ ρ_αβ = ρ0` for the nine coefficients.
pub fn expand_state(rho0: &DensityMatrix, bases: &DampingBasisSet) -> Result<ExpansionCoefficients> {
    check_density(rho0, DENSITY_TOL)?;
    expand_operator(rho0, bases)
}

/// Expansion of an arbitrary operator (no physicality check).
pub fn expand_operator(op: &Matrix3c, bases: &DampingBasisSet) -> Result<ExpansionCoefficients> {
    let lu = LU::new(bases.vectorized());
    let rhs: Vector9c = linalg::vectorize(op);
    let sol = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("damping bases do not span the operator space".into()))?;
    let mut k = 0;
    Ok(ExpansionCoefficients::from_fn(|_, _| {
        let v = sol[k];
        k += 1;
        v
    }))
}

/// `ρ(t) = Σ M_αβ exp(λ_αβ t) ρ_αβ`.
pub fn evolve_analytic(coeffs: &ExpansionCoefficients, bases: &DampingBasisSet, t: f64) -> DensityMatrix {
    bases
        .iter()
        .map(|((a, b), basis, lambda)| basis * (coeffs.get(a, b) * (lambda * t).exp()))
        .fold(Matrix3c::zeros(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{dressed_spectrum, ModelParams};
    use approx::assert_relative_eq;

    fn setup(xi: f64, gm: f64, gp: f64) -> (DressedSpectrum, DampingBasisSet) {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, xi).unwrap());
        let b = build_damping_bases(&s, &RatePair::new(gm, gp).unwrap());
        (s, b)
    }

    #[test]
    fn eigenvalues_at_zero_drive() {
        let (_, b) = setup(0.0, 0.002, 0.006);
        assert_eq!(b.eigenvalue(Level::Ground, Level::Ground), C64::new(0.0, 0.0));
        assert_relative_eq!(b.eigenvalue(Level::Plus, Level::Plus).re, -0.003);
        assert_eq!(b.eigenvalue(Level::Plus, Level::Plus).im, 0.0);
        let l0p = b.eigenvalue(Level::Ground, Level::Plus);
        assert_relative_eq!(l0p.re, -0.0015);
        assert_relative_eq!(l0p.im, 1.2, epsilon = 1e-15);
        let lmp = b.eigenvalue(Level::Minus, Level::Plus);
        assert_relative_eq!(lmp.re, -0.002);
        assert_relative_eq!(lmp.im, 0.4, epsilon = 1e-15);
    }

    #[test]
    fn eigenvalues_with_drive() {
        let (s, b) = setup(0.1, 0.002, 0.006);
        let d = 1.0 - 0.04;
        // ω+ = ω_z + Ω + (3ω_z − Ω) ξ² / (2(ω_z² − Ω²))
        let omega_plus = 1.2 + 2.8 * 0.01 / (2.0 * d);
        assert_relative_eq!(b.eigenvalue(Level::Ground, Level::Plus).im, omega_plus, epsilon = 1e-14);
        let omega_minus = 0.8 + 3.2 * 0.01 / (2.0 * d);
        assert_relative_eq!(b.eigenvalue(Level::Ground, Level::Minus).im, omega_minus, epsilon = 1e-14);
        // Δ = 2Ω[1 − ξ²/(2(ω_z² − Ω²))]
        let delta = 0.4 * (1.0 - 0.01 / (2.0 * d));
        assert_relative_eq!(b.eigenvalue(Level::Minus, Level::Plus).im, delta, epsilon = 1e-14);
        assert_relative_eq!(s.delta, delta, epsilon = 1e-14);
    }

    #[test]
    fn basis_structure() {
        let (_, b) = setup(0.1, 0.002, 0.006);
        assert_eq!(b.basis(Level::Ground, Level::Ground).trace(), C64::new(1.0, 0.0));
        for ((x, y), basis, lambda) in b.iter() {
            if (x, y) != (Level::Ground, Level::Ground) {
                assert_eq!(basis.trace(), C64::new(0.0, 0.0));
            }
            assert_eq!(*b.basis(y, x), basis.adjoint());
            assert_eq!(b.eigenvalue(y, x), lambda.conj());
            assert!(lambda.re <= 0.0);
        }
        assert!(b.condition_number() < 1e3);
    }

    #[test]
    fn steady_state_expansion() {
        let (_, b) = setup(0.1, 0.002, 0.006);
        let rho = *b.basis(Level::Ground, Level::Ground);
        let m = expand_state(&rho, &b).unwrap();
        for ((x, y), v) in m.iter() {
            let expected = if (x, y) == (Level::Ground, Level::Ground) { 1.0 } else { 0.0 };
            assert!((v - C64::new(expected, 0.0)).norm() < 1e-15);
        }
        for t in [0.0, 1.0, 1e3] {
            assert!(linalg::frobenius(&(evolve_analytic(&m, &b, t) - rho)) < 1e-15);
        }
    }

    #[test]
    fn rejects_unphysical_states() {
        let (_, b) = setup(0.1, 0.002, 0.006);
        let twice = *b.basis(Level::Ground, Level::Ground) * C64::new(2.0, 0.0);
        assert!(matches!(expand_state(&twice, &b), Err(Error::InvalidDensity(_))));
        let mut neg = Matrix3c::zeros();
        neg[(0, 0)] = C64::new(1.5, 0.0);
        neg[(1, 1)] = C64::new(-0.5, 0.0);
        assert!(matches!(expand_state(&neg, &b), Err(Error::InvalidDensity(_))));
        let mut skew = *b.basis(Level::Ground, Level::Ground);
        skew[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(expand_state(&skew, &b), Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn rates_validation() {
        assert!(RatePair::new(-1.0, 0.0).is_err());
        assert!(RatePair::new(f64::NAN, 0.0).is_err());
        assert!(RatePair::new(0.01, 0.01).unwrap().is_degenerate());
        assert_eq!(RatePair::new(0.01, 0.02).unwrap().warnings().len(), 0);
    }
}
