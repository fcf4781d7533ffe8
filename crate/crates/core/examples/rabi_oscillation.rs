//! Excited-state population from |e,0⟩: closed form, Liouvillian oracle, and
//! the Rabi frequency read off an FFT.

use driven_jc::analysis::{amplitude_spectrum, linspace, max_abs_difference, Window};
use driven_jc::damping::RatePair;
use driven_jc::liouvillian::{build_liouvillian, propagate_exact};
use driven_jc::model::{dressed_spectrum, ModelParams};
use driven_jc::observables::{excited_population_analytic, excited_population_numeric, inverted_state, minute_amplitude};

fn main() -> driven_jc::Result<()> {
    let rates = RatePair::new(0.002, 0.006)?;
    let times = linspace(0.0, 1000.0, 10_001);
    for xi in [0.02, 0.1] {
        let s = dressed_spectrum(&ModelParams::dimensionless(0.2, xi)?);
        let l = build_liouvillian(&s, &rates)?;
        let oracle = excited_population_numeric(&propagate_exact(&l, &inverted_state(&s), &times)?, &s);
        let closed: Vec<f64> = times.iter().map(|&t| excited_population_analytic(&s, &rates, t)).collect();
        let fft = amplitude_spectrum(&oracle, times[1], Window::Hann)?;

        println!("xi = {xi}");
        println!("  max |closed - oracle| = {:.3e}", max_abs_difference(&closed, &oracle));
        println!("  Rabi frequency: FFT {:.5}, formula {:.7} (bin {:.1e})", fft.dominant().omega, s.delta, fft.bin_width);
        println!("  fast-oscillation prefactor {:.3e}", minute_amplitude(&s));
        for k in (0..=2000).step_by(250) {
            println!("  t = {:>6.1}  Pe = {:.6}  oracle {:.6}", times[k], closed[k], oracle[k]);
        }
    }
    Ok(())
}
