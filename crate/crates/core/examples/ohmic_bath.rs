//! Ohmic spectral density, its KMS branch, and the resulting transition rates.

use driven_jc::liouvillian::{transition_rates, BathSpec, OhmicBath};
use driven_jc::model::{dressed_spectrum, ModelParams};

fn main() -> driven_jc::Result<()> {
    let bath = OhmicBath::new(0.5, 0.2, 0.1)?;
    println!("{:>8} {:>14} {:>14} {:>14}", "omega", "gamma(w)", "gamma(-w)", "ratio/exp");
    for w in [0.01, 0.1, 0.2, 0.5, 0.8, 1.0, 1.2, 2.0] {
        let up = bath.gamma(-w);
        let down = bath.gamma(w);
        println!("{w:>8} {down:>14.6e} {up:>14.6e} {:>14.12}", up / down / (-w / bath.temperature).exp());
    }

    for xi in [0.0, 0.2] {
        let spectrum = dressed_spectrum(&ModelParams::dimensionless(0.2, xi)?);
        let rates = transition_rates(&spectrum, &BathSpec::ohmic(0.5, 0.2, 0.0)?)?;
        println!(
            "xi = {xi}: gamma- = {:.6e} at {:.6}, gamma+ = {:.6e} at {:.6}",
            rates.gamma_minus, spectrum.omega_minus, rates.gamma_plus, spectrum.omega_plus
        );
    }
    Ok(())
}
