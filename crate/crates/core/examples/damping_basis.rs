//! The nine damping bases, their eigenvalues, and the expansion of |e,0⟩.

use driven_jc::damping::{build_damping_bases, evolve_analytic, expand_state, Level, RatePair};
use driven_jc::model::{dressed_spectrum, ModelParams};
use driven_jc::observables::inverted_state;

fn main() -> driven_jc::Result<()> {
    let spectrum = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1)?);
    let rates = RatePair::new(0.002, 0.006)?;
    let bases = build_damping_bases(&spectrum, &rates);

    println!("lambda_ab:");
    for ((a, b), _, lambda) in bases.iter() {
        println!("  {a}{b}: {:+.6e} {:+.10}i", lambda.re, lambda.im);
    }
    println!("condition number of the basis: {:.3}", bases.condition_number());

    let rho0 = inverted_state(&spectrum);
    let m = expand_state(&rho0, &bases)?;
    println!("\nexpansion of |e,0><e,0|:");
    for ((a, b), c) in m.iter() {
        println!("  M_{a}{b} = {:+.6} {:+.6}i", c.re, c.im);
    }

    for t in [0.0, 10.0, 100.0, 1000.0] {
        let rho = evolve_analytic(&m, &bases, t);
        println!(
            "t = {t:>6}: p0 = {:.6}  p- = {:.6}  p+ = {:.6}",
            rho[(Level::Ground.index(), Level::Ground.index())].re,
            rho[(Level::Minus.index(), Level::Minus.index())].re,
            rho[(Level::Plus.index(), Level::Plus.index())].re
        );
    }
    Ok(())
}
