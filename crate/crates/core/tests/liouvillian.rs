use approx::assert_relative_eq;
use driven_jc::damping::RatePair;
use driven_jc::liouvillian::{
    build_liouvillian, gamma_of, integrate, propagate_exact, transition_rates, vectorize, BathSpec, OhmicBath,
};
use driven_jc::model::{dressed_spectrum, ModelParams};
use driven_jc::observables::InitialQubitState;
use driven_jc::{DensityMatrix, Error, Matrix3c, C64};
use proptest::prelude::*;

fn fig1_spectrum() -> driven_jc::DressedSpectrum {
    dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1).unwrap())
}

#[test]
fn generator_matches_hand_built_action() {
    // Reference: −i[H, ρ] + Σ γ/2 (JρJ† − ½{J†J, ρ}) written out with 3×3 products.
    let s = fig1_spectrum();
    let r = RatePair::new(0.01, 0.03).unwrap();
    let l = build_liouvillian(&s, &r).unwrap();
    let h = s.hamiltonian();
    let rho = Matrix3c::from_fn(|i, j| C64::new(0.1 * (i + 2 * j) as f64, 0.05 * i as f64 - 0.02 * j as f64));
    let mut expected = (h * rho - rho * h) * C64::new(0.0, -1.0);
    for (k, g) in [(1, r.gamma_minus), (2, r.gamma_plus)] {
        let mut j = Matrix3c::zeros();
        j[(0, k)] = C64::new(1.0, 0.0);
        let jdj = j.adjoint() * j;
        expected += (j * rho * j.adjoint() - (jdj * rho + rho * jdj) * C64::new(0.5, 0.0)) * C64::new(g / 2.0, 0.0);
    }
    assert!((l.apply(&rho) - expected).norm() < 1e-15);
    assert!((l.matrix() * vectorize(&rho) - vectorize(&expected)).norm() < 1e-15);
}

#[test]
fn ohmic_rates() {
    let bath = OhmicBath::new(0.01, 0.2, 0.0).unwrap();
    assert_relative_eq!(bath.gamma(1.0), 6.737_946_999_085_467e-5, max_relative = 1e-14);
    assert_eq!(bath.gamma(-1.0), 0.0);
    assert_eq!(bath.gamma(0.0), 0.0);
    let warm = OhmicBath::new(0.01, 0.2, 0.5).unwrap();
    assert_relative_eq!(warm.gamma(-1.0), (-2.0f64).exp() * warm.gamma(1.0), max_relative = 1e-15);
    assert!(OhmicBath::new(0.01, 0.0, 0.0).is_err());
    assert!(OhmicBath::new(0.01, 0.2, -1.0).is_err());
}

#[test]
fn direct_bath_knows_only_its_transitions() {
    let s = fig1_spectrum();
    let bath = BathSpec::direct(0.002, 0.006).unwrap();
    assert_eq!(gamma_of(s.omega_minus, &bath, &s).unwrap(), 0.002);
    assert_eq!(gamma_of(s.omega_plus, &bath, &s).unwrap(), 0.006);
    assert!(matches!(gamma_of(0.5, &bath, &s), Err(Error::UnregisteredFrequency(_))));
    let ohmic = BathSpec::ohmic(0.5, 0.2, 0.0).unwrap();
    let r = transition_rates(&s, &ohmic).unwrap();
    assert!(r.gamma_plus < r.gamma_minus);
}

#[test]
fn rk4_tracks_exact_propagation() {
    let s = fig1_spectrum();
    let l = build_liouvillian(&s, &RatePair::new(0.002, 0.006).unwrap()).unwrap();
    let rho0 = InitialQubitState::new(0.6, 0.8, 0.4).unwrap().dressed_density(&s);
    let times: Vec<f64> = (0..=200).map(|k| 0.5 * k as f64).collect();
    let rk4 = integrate(&l, &rho0, &times).unwrap();
    let exact = propagate_exact(&l, &rho0, &times).unwrap();
    // ρ_0± rotate at ω+ ≈ 1.2, the fastest phase; RK4 phase error builds to ~5e-9 by t = 100.
    let d = rk4.max_distance(&exact);
    assert!(d < 1e-8, "{d}");
    let table = rk4.to_table();
    assert_eq!(table.names()[..3], ["t", "rho_00_re", "rho_00_im"]);
    assert_eq!(table.rows(), times.len());
}

#[test]
fn relaxes_to_ground() {
    let s = fig1_spectrum();
    let l = build_liouvillian(&s, &RatePair::new(0.05, 0.05).unwrap()).unwrap();
    let rho0 = InitialQubitState::new(0.0, 1.0, 0.0).unwrap().dressed_density(&s);
    let late = l.propagate(&rho0, 2000.0);
    let mut ground = DensityMatrix::zeros();
    ground[(0, 0)] = C64::new(1.0, 0.0);
    assert!((late - ground).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn trajectories_stay_physical(
        coupling in 0.05..0.6f64,
        frac in 0.0..0.4f64,
        gm in 0.0..0.1f64,
        gp in 0.0..0.1f64,
        cg in 0.0..1.0f64,
        ce in 0.01..1.0f64,
        phi in 0.0..std::f64::consts::TAU,
    ) {
        let s = dressed_spectrum(&ModelParams::dimensionless(coupling, frac * (1.0 - coupling)).unwrap());
        let l = build_liouvillian(&s, &RatePair::new(gm, gp).unwrap()).unwrap();
        prop_assert!(l.trace_defect() < 1e-12);
        let rho0 = InitialQubitState::new(cg, ce, phi).unwrap().dressed_density(&s);
        let times: Vec<f64> = (0..=40).map(|k| 2.5 * k as f64).collect();
        let p = integrate(&l, &rho0, &times).unwrap().physicality();
        prop_assert!(p.within(1e-10, 1e-10, 1e-9), "{:?}", p);
    }

    #[test]
    fn kms_holds_on_a_log_grid(kappa in 0.0..2.0f64, cutoff in 0.01..5.0f64, temp in 0.01..5.0f64, e in -3.0..1.0f64) {
        let bath = OhmicBath::new(kappa, cutoff, temp).unwrap();
        let w = 10f64.powf(e);
        let lhs = bath.gamma(-w);
        let rhs = (-w / temp).exp() * bath.gamma(w);
        prop_assert!((lhs - rhs).abs() <= 1e-15 * rhs.abs());
    }
}
