//! Brute-force 9×9 Liouvillian as an oracle for the damping-basis solution.

use driven_jc::damping::{build_damping_bases, evolve_analytic, expand_state, RatePair};
use driven_jc::liouvillian::{build_liouvillian, integrate, max_eigenvalue_mismatch, propagate_exact, Trajectory};
use driven_jc::model::{dressed_spectrum, ModelParams};
use driven_jc::observables::inverted_state;

fn main() -> driven_jc::Result<()> {
    let spectrum = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1)?);
    let rates = RatePair::new(0.002, 0.006)?;
    let bases = build_damping_bases(&spectrum, &rates);
    let l = build_liouvillian(&spectrum, &rates)?;

    let mismatch = max_eigenvalue_mismatch(&l, bases.iter().map(|(_, _, z)| z));
    println!("eigenvalue mismatch: {mismatch:.2e}");
    println!("trace defect: {:.2e}", l.trace_defect());
    println!("kernel dimension: {}", l.kernel_dimension(1e-12));

    let rho0 = inverted_state(&spectrum);
    let times: Vec<f64> = (0..=10_000).map(|k| 0.01 * k as f64).collect();
    let rk4 = integrate(&l, &rho0, &times)?;
    let exact = propagate_exact(&l, &rho0, &times)?;
    let m = expand_state(&rho0, &bases)?;
    let analytic = Trajectory::new(times.clone(), times.iter().map(|&t| evolve_analytic(&m, &bases, t)).collect())?;

    println!("rk4 vs analytic:   {:.2e}", rk4.max_distance(&analytic));
    println!("exact vs analytic: {:.2e}", exact.max_distance(&analytic));
    let p = rk4.physicality();
    println!(
        "physicality: trace {:.1e}, hermiticity {:.1e}, min eigenvalue {:.1e}",
        p.max_trace_error, p.max_hermiticity_defect, p.min_eigenvalue
    );
    Ok(())
}
