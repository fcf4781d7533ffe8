//! Small dense helpers shared by the damping and Liouvillian modules.
//!
//! Vectorization is column stacking: `vec(ρ)[i + 3 j] = ρ[i, j]`, so that
//! `vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ)`.

use nalgebra::{SMatrix, SVector, Schur};

use crate::error::{Error, Result};
use crate::{Matrix3c, C64};

pub type Matrix9c = SMatrix<C64, 9, 9>;
pub type Vector9c = SVector<C64, 9>;

pub fn vectorize(rho: &Matrix3c) -> Vector9c {
    let mut v = Vector9c::zeros();
    for j in 0..3 {
        for i in 0..3 {
            v[i + 3 * j] = rho[(i, j)];
        }
    }
    v
}

pub fn unvectorize(v: &Vector9c) -> Matrix3c {
    let mut rho = Matrix3c::zeros();
    for j in 0..3 {
        for i in 0..3 {
            rho[(i, j)] = v[i + 3 * j];
        }
    }
    rho
}

pub(crate) fn kron(a: &Matrix3c, b: &Matrix3c) -> Matrix9c {
    let mut out = Matrix9c::zeros();
    for ar in 0..3 {
        for ac in 0..3 {
            let s = a[(ar, ac)];
            if s == C64::new(0.0, 0.0) {
                continue;
            }
            for br in 0..3 {
                for bc in 0..3 {
                    out[(3 * ar + br, 3 * ac + bc)] = s * b[(br, bc)];
                }
            }
        }
    }
    out
}

pub(crate) fn frobenius(m: &Matrix3c) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn hermiticity_defect(m: &Matrix3c) -> f64 {
    frobenius(&(m - m.adjoint()))
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub(crate) fn min_hermitian_eigenvalue(m: &Matrix3c) -> f64 {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    h.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Eigenvalues and right eigenvectors (columns) of a dense complex 9×9 matrix.
///
/// Complex Schur form `A = Q T Q*`, then back substitution on the upper
/// triangular `T`. Near-equal diagonal entries are regularized the same way
/// LAPACK's `ztrevc` does, by flooring the pivot at `ε‖T‖`.
pub(crate) fn eigen_decompose(a: &Matrix9c) -> Result<(Vector9c, Matrix9c)> {
    let scale = a.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).max(1.0);
    let schur = Schur::try_new(*a, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Eigen("complex Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let n = 9;
    let small = f64::EPSILON * scale;
    let mut values = Vector9c::zeros();
    let mut vectors = Matrix9c::zeros();
    for k in 0..n {
        let lambda = t[(k, k)];
        values[k] = lambda;
        let mut y = Vector9c::zeros();
        y[k] = C64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = C64::new(0.0, 0.0);
            for j in (i + 1)..=k {
                acc += t[(i, j)] * y[j];
            }
            let mut pivot = t[(i, i)] - lambda;
            if pivot.norm() < small {
                pivot = C64::new(small, 0.0);
            }
            y[i] = -acc / pivot;
        }
        let x = q * y;
        let norm = x.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Eigen(format!("degenerate eigenvector for eigenvalue {lambda}")));
        }
        vectors.set_column(k, &(x / C64::new(norm, 0.0)));
    }
    Ok((values, vectors))
}

/// 2-norm condition number from the singular values.
pub(crate) fn condition_number(a: &Matrix9c) -> f64 {
    let sv = a.singular_values();
    let max = sv.iter().copied().fold(0.0_f64, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}
