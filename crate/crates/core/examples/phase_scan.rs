//! Change of the decoherence factor with the initial phase φ.

use std::f64::consts::PI;

use driven_jc::analysis::linspace;
use driven_jc::damping::RatePair;
use driven_jc::model::{dressed_spectrum, ModelParams};
use driven_jc::observables::{delta_d, InitialQubitState};

fn main() -> driven_jc::Result<()> {
    let coupling = 0.5;
    let rates = RatePair::new(0.05, 0.055)?;
    let times = linspace(0.0, 4.0 * PI / coupling, 9);
    let state = InitialQubitState::new(1.0, 1.0, 0.0)?;

    for xi in [0.1, 0.05, 0.025] {
        let s = dressed_spectrum(&ModelParams::dimensionless(coupling, xi)?);
        println!("xi = {xi}");
        let mut sum = vec![0.0; times.len()];
        for phi in [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
            let dd = delta_d(&state.with_phi(phi), &s, &rates, &times)?;
            if phi == 0.0 || phi == PI {
                sum.iter_mut().zip(&dd).for_each(|(a, b)| *a += b);
            }
            let row: Vec<String> = dd.iter().map(|v| format!("{v:+.4}")).collect();
            println!("  phi = {:.2}pi: {}", phi / PI, row.join(" "));
        }
        let worst = sum.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        println!("  max |dD(0) + dD(pi)| on this grid = {worst:.3e}");
    }
    Ok(())
}
