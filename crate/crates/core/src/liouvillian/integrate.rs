//! Numerical propagation of `dv/dt = L v`: fixed-step classical RK4 and exact
//! propagation through the eigendecomposition.

use crate::damping::{check_density, DENSITY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, Vector9c};
use crate::table::Table;
use crate::{DensityMatrix, C64};

use super::{unvectorize, vectorize, LiouvillianMatrix};

/// RK4 steps satisfy `h ≤ STEP_FACTOR / max|λ|`.
pub const STEP_FACTOR: f64 = 0.01;

/// Time grid with density matrices and optional scalar observables.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
    observables: Vec<(String, Vec<f64>)>,
}

/// Worst-case physicality numbers along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Physicality {
    pub max_trace_error: f64,
    pub max_hermiticity_defect: f64,
    pub min_eigenvalue: f64,
}

impl Physicality {
    pub fn within(&self, trace_tol: f64, hermiticity_tol: f64, positivity_tol: f64) -> bool {
        self.max_trace_error <= trace_tol
            && self.max_hermiticity_defect <= hermiticity_tol
            && self.min_eigenvalue >= -positivity_tol
    }
}

pub(crate) fn check_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidGrid("empty time grid".into()));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid("non-finite time".into()));
    }
    if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!(
            "time grid not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        check_grid(&times)?;
        if times.len() != states.len() {
            return Err(Error::InvalidGrid(format!(
                "{} times but {} states",
                times.len(),
                states.len()
            )));
        }
        Ok(Self {
            times,
            states,
            observables: Vec::new(),
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Attach a named scalar series; must match the grid length.
    pub fn add_observable(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if values.len() != self.times.len() {
            return Err(Error::InvalidGrid(format!(
                "observable has {} values for {} times",
                values.len(),
                self.times.len()
            )));
        }
        self.observables.push((name.into(), values));
        Ok(())
    }

    pub fn observable(&self, name: &str) -> Option<&[f64]> {
        self.observables
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn map<T>(&self, f: impl FnMut(&DensityMatrix) -> T) -> Vec<T> {
        self.states.iter().map(f).collect()
    }

    pub fn physicality(&self) -> Physicality {
        let mut p = Physicality {
            max_trace_error: 0.0,
            max_hermiticity_defect: 0.0,
            min_eigenvalue: f64::INFINITY,
        };
        for rho in &self.states {
            p.max_trace_error = p.max_trace_error.max((rho.trace() - C64::new(1.0, 0.0)).norm());
            p.max_hermiticity_defect = p.max_hermiticity_defect.max(linalg::hermiticity_defect(rho));
            p.min_eigenvalue = p.min_eigenvalue.min(linalg::min_hermitian_eigenvalue(rho));
        }
        p
    }

    /// Largest Frobenius distance to another trajectory on the same grid.
    pub fn max_distance(&self, other: &Trajectory) -> f64 {
        self.states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| linalg::frobenius(&(a - b)))
            .fold(0.0, f64::max)
    }

    /// Columns `t`, `rho_ij_re`, `rho_ij_im` (dressed indices), then observables.
    pub fn to_table(&self) -> Table {
        let mut table = Table::new();
        table.push("t", self.times.clone());
        for i in 0..3 {
            for j in 0..3 {
                table.push(format!("rho_{i}{j}_re"), self.map(|r| r[(i, j)].re));
                table.push(format!("rho_{i}{j}_im"), self.map(|r| r[(i, j)].im));
            }
        }
        for (name, values) in &self.observables {
            table.push(name.clone(), values.clone());
        }
        table
    }
}

fn rk4_step(l: &crate::linalg::Matrix9c, v: &Vector9c, h: f64) -> Vector9c {
    let hc = C64::new(h, 0.0);
    let half = C64::new(h / 2.0, 0.0);
    let k1 = l * v;
    let k2 = l * (v + k1 * half);
    let k3 = l * (v + k2 * half);
    let k4 = l * (v + k3 * hc);
    v + (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0)
}

/// Classical RK4 from `rho0` at `times[0]` across the grid. Each interval is
/// split into equal substeps no longer than `STEP_FACTOR / max|λ|`.
pub fn integrate(liouvillian: &LiouvillianMatrix, rho0: &DensityMatrix, times: &[f64]) -> Result<Trajectory> {
    check_grid(times)?;
    check_density(rho0, DENSITY_TOL)?;
    let radius = liouvillian.spectral_radius();
    let h_max = if radius > 0.0 { STEP_FACTOR / radius } else { f64::INFINITY };
    let l = liouvillian.matrix();

    let mut v = vectorize(rho0);
    let mut states = Vec::with_capacity(times.len());
    states.push(*rho0);
    for w in times.windows(2) {
        let interval = w[1] - w[0];
        let substeps = (interval / h_max).ceil().max(1.0);
        let h = interval / substeps;
        if h <= 16.0 * f64::EPSILON * w[1].abs().max(1.0) || substeps > 1e12 {
            return Err(Error::StepUnderflow { step: h, interval });
        }
        for _ in 0..substeps as u64 {
            v = rk4_step(l, &v, h);
        }
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(w[1]));
        }
        states.push(unvectorize(&v));
    }
    Trajectory::new(times.to_vec(), states)
}

/// `exp(L (t − t0)) ρ0` on every grid point via the eigendecomposition.
pub fn propagate_exact(liouvillian: &LiouvillianMatrix, rho0: &DensityMatrix, times: &[f64]) -> Result<Trajectory> {
    check_grid(times)?;
    check_density(rho0, DENSITY_TOL)?;
    let t0 = times[0];
    let states = times.iter().map(|t| liouvillian.propagate(rho0, t - t0)).collect();
    Trajectory::new(times.to_vec(), states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::damping::RatePair;
    use crate::liouvillian::build_liouvillian;
    use crate::model::{dressed_spectrum, ModelParams};

    fn setup() -> LiouvillianMatrix {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1).unwrap());
        build_liouvillian(&s, &RatePair::new(0.002, 0.006).unwrap()).unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        let l = setup();
        let rho = DensityMatrix::from_diagonal_element(C64::new(1.0 / 3.0, 0.0));
        assert!(matches!(integrate(&l, &rho, &[]), Err(Error::InvalidGrid(_))));
        assert!(matches!(integrate(&l, &rho, &[0.0, 1.0, 1.0]), Err(Error::InvalidGrid(_))));
        assert!(matches!(integrate(&l, &rho, &[0.0, f64::NAN]), Err(Error::InvalidGrid(_))));
        assert!(matches!(
            integrate(&l, &rho, &[1e6, 1e6 + 1e-9]),
            Err(Error::StepUnderflow { .. })
        ));
    }

    #[test]
    fn steady_state_is_constant() {
        let l = setup();
        let mut rho = DensityMatrix::zeros();
        rho[(0, 0)] = C64::new(1.0, 0.0);
        let times: Vec<f64> = (0..=100).map(|k| k as f64).collect();
        let traj = integrate(&l, &rho, &times).unwrap();
        assert!(traj.states().iter().all(|r| linalg::frobenius(&(r - rho)) < 1e-15));
    }

    #[test]
    fn observables_must_match_grid() {
        let l = setup();
        let rho = DensityMatrix::from_diagonal_element(C64::new(1.0 / 3.0, 0.0));
        let mut traj = integrate(&l, &rho, &[0.0, 0.5, 1.0]).unwrap();
        assert!(traj.add_observable("x", vec![1.0]).is_err());
        traj.add_observable("x", vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(traj.observable("x"), Some(&[1.0, 2.0, 3.0][..]));
        let table = traj.to_table();
        assert_eq!(table.names().len(), 1 + 18 + 1);
    }
}
