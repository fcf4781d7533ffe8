//! Perturbed dressed levels against exact diagonalization of the 3×3 block.

use driven_jc::{bare_hamiltonian, build_params, dressed_spectrum};

fn main() -> driven_jc::Result<()> {
    // 5 GHz qubit, Ω/ω_z = 0.2
    for xi in [0.0, 0.02, 0.1, 0.2] {
        let params = build_params(5.0, 0.2, xi)?;
        let s = dressed_spectrum(&params);
        let mut exact: Vec<f64> = bare_hamiltonian(&params).symmetric_eigenvalues().iter().copied().collect();
        exact.sort_by(f64::total_cmp);

        println!("xi = {xi}");
        for (name, e, x) in [("E0", s.e0, exact[0]), ("E-", s.e_minus, exact[1]), ("E+", s.e_plus, exact[2])] {
            println!("  {name:>3} = {e:+.12}   exact {x:+.12}   diff {:.2e}", (e - x).abs());
        }
        println!(
            "  Delta = {:.10}  omega- = {:.10}  omega+ = {:.10}  eta = {:.6}",
            s.delta, s.omega_minus, s.omega_plus, s.eta
        );
        println!("  Rabi correction 2*Omega - Delta = {:.3e}", s.rabi_correction());
    }

    match build_params(5.0, 0.2, 0.5) {
        Err(e) => println!("\nxi = 0.5 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
