//! Stationary field correlations: closed forms against the regression oracle.

use driven_jc::damping::RatePair;
use driven_jc::liouvillian::build_liouvillian;
use driven_jc::model::{dressed_spectrum, ModelParams};
use driven_jc::observables::{correlation, correlation_regression, CorrelationKind};

fn main() -> driven_jc::Result<()> {
    let s = dressed_spectrum(&ModelParams::dimensionless(0.2, 0.1)?);
    let rates = RatePair::new(0.002, 0.006)?;
    let l = build_liouvillian(&s, &rates)?;
    let taus = [0.0, 1.0, 10.0, 100.0];
    println!("eta^2 = {:.6e}", s.eta * s.eta);

    let kind: CorrelationKind = std::env::args().nth(1).as_deref().unwrap_or("x_x").parse()?;
    for k in CorrelationKind::ALL {
        let closed = correlation(k, &s, &rates, &taus);
        let numeric = correlation_regression(k, &s, &l, &taus);
        let marker = if k == kind { "*" } else { " " };
        println!("{marker}{k} (constant {:.3e})", closed.constant.re);
        for ((t, c), n) in taus.iter().zip(&closed.values).zip(&numeric) {
            println!("    tau = {t:>5}: closed {:+.6}{:+.6}i  regression {:+.6}{:+.6}i", c.re, c.im, n.re, n.im);
        }
    }
    Ok(())
}
