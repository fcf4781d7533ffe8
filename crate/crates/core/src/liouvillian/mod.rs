//! Brute-force reference: the exact 9×9 Lindblad superoperator
//!
//! ```text
//! L(ρ) = −i[H, ρ] + Σ± (γ±/2) [J± ρ J±† − ½{J±† J±, ρ}],   J± = |E0⟩⟨E±|
//! ```
//!
//! with `H = diag(E0, E−, E+)` in the dressed computational basis. It is
//! assembled from Kronecker products and never uses the damping-basis
//! closed forms, so it serves as an independent oracle for them. Only the
//! downward jumps are present; upward (thermal) channels are exposed through
//! [`gamma_of`] but not wired into the generator.

mod bath;
mod integrate;

pub use bath::{gamma_of, transition_rates, BathSpec, OhmicBath};
pub use integrate::{integrate, propagate_exact, Physicality, Trajectory};

pub use crate::linalg::{unvectorize, vectorize, Matrix9c as Superoperator, Vector9c};

use crate::damping::{Level, RatePair};
use crate::error::Result;
use crate::linalg::{self, kron};
use crate::model::DressedSpectrum;
use crate::{DensityMatrix, Matrix3c, C64};

/// The generator together with its cached eigendecomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvillianMatrix {
    matrix: Superoperator,
    eigenvalues: Vector9c,
    right: Superoperator,
    right_inv: Superoperator,
}

impl LiouvillianMatrix {
    pub fn matrix(&self) -> &Superoperator {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &Vector9c {
        &self.eigenvalues
    }

    /// Right eigenvectors as columns, paired with [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &Superoperator {
        &self.right
    }

    pub fn apply(&self, rho: &Matrix3c) -> Matrix3c {
        unvectorize(&(self.matrix * vectorize(rho)))
    }

    /// `max |λ|` over the spectrum.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `exp(L t) ρ` through the eigendecomposition.
    pub fn propagate(&self, rho: &Matrix3c, t: f64) -> Matrix3c {
        let coeffs = self.right_inv * vectorize(rho);
        let scaled = Vector9c::from_fn(|k, _| coeffs[k] * (self.eigenvalues[k] * t).exp());
        unvectorize(&(self.right * scaled))
    }

    /// Largest `|d/dt Tr ρ|` the generator can produce from a unit basis
    /// element; zero for a trace-preserving map.
    pub fn trace_defect(&self) -> f64 {
        (0..9)
            .map(|col| {
                (0..3)
                    .map(|i| self.matrix[(i + 3 * i, col)])
                    .sum::<C64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// Number of eigenvalues with `|λ| ≤ tol`.
    pub fn kernel_dimension(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|z| z.norm() <= tol).count()
    }

    /// Largest distance from an eigenvalue to the nearest conjugate in the
    /// spectrum.
    pub fn conjugation_defect(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| {
                self.eigenvalues
                    .iter()
                    .map(|w| (w - z.conj()).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// Assemble `L` from the dressed energies and the two downward rates.
pub fn build_liouvillian(spectrum: &DressedSpectrum, rates: &RatePair) -> Result<LiouvillianMatrix> {
    let h = spectrum.hamiltonian();
    let id = Matrix3c::identity();
    let minus_i = C64::new(0.0, -1.0);
    // vec(Hρ − ρH) = (I ⊗ H − Hᵀ ⊗ I) vec(ρ)
    let mut l = (kron(&id, &h) - kron(&h.transpose(), &id)) * minus_i;
    for level in [Level::Minus, Level::Plus] {
        let gamma = rates.gamma(level);
        let mut jump = Matrix3c::zeros();
        jump[(Level::Ground.index(), level.index())] = C64::new(1.0, 0.0);
        let jdj = jump.adjoint() * jump;
        let dissipator = kron(&jump.conjugate(), &jump)
            - (kron(&id, &jdj) + kron(&jdj.transpose(), &id)) * C64::new(0.5, 0.0);
        l += dissipator * C64::new(gamma / 2.0, 0.0);
    }
    let (eigenvalues, right) = linalg::eigen_decompose(&l)?;
    let right_inv = right
        .try_inverse()
        .ok_or_else(|| crate::Error::Singular("Liouvillian eigenvectors are not a basis".into()))?;
    Ok(LiouvillianMatrix {
        matrix: l,
        eigenvalues,
        right,
        right_inv,
    })
}

/// Pair every damping-basis eigenvalue with its nearest numerical eigenvalue
/// of `L` and return the largest mismatch.
pub fn max_eigenvalue_mismatch(liouvillian: &LiouvillianMatrix, expected: impl IntoIterator<Item = C64>) -> f64 {
    let mut pool: Vec<C64> = liouvillian.eigenvalues().iter().copied().collect();
    let mut worst: f64 = 0.0;
    for target in expected {
        let (idx, dist) = pool
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - target).norm()))
            .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        if idx == usize::MAX {
            return f64::INFINITY;
        }
        pool.swap_remove(idx);
        worst = worst.max(dist);
    }
    worst
}

/// `‖L ρ − λ ρ‖_F`.
pub fn eigen_residual(liouvillian: &LiouvillianMatrix, rho: &DensityMatrix, lambda: C64) -> f64 {
    linalg::frobenius(&(liouvillian.apply(rho) - rho * lambda))
}
