//! Decoherence factor D(t) for several population ratios against the
//! undriven D⁰(t).

use driven_jc::analysis::{amplitude_spectrum, linspace, rms_distance, Window};
use driven_jc::damping::RatePair;
use driven_jc::model::{dressed_spectrum, ModelParams};
use driven_jc::observables::{d0_factor, decoherence_factor, InitialQubitState};

fn main() -> driven_jc::Result<()> {
    let coupling = 0.5;
    let s = dressed_spectrum(&ModelParams::dimensionless(coupling, 0.1)?);
    let rates = RatePair::new(0.05, 0.055)?;
    let times = linspace(0.0, 100.0, 4096);
    let d0: Vec<f64> = times.iter().map(|&t| d0_factor(coupling, &rates, t)).collect();

    for ratio in [0.1, 1.0, 100.0] {
        let state = InitialQubitState::from_ratio(ratio, 0.0)?;
        let d = decoherence_factor(&state, &s, &rates, &times)?;
        let line = amplitude_spectrum(&d, times[1], Window::Hann)?.dominant();
        println!(
            "c_e/c_g = {ratio:>5}: rms distance to D0 {:.4e}, dominant line {:.4} (Delta {:.4})",
            rms_distance(&d, &d0),
            line.omega,
            s.delta
        );
    }
    Ok(())
}
