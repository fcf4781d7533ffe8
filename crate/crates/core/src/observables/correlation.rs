use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::damping::{build_damping_bases, Level, RatePair};
use crate::error::{Error, Result};
use crate::liouvillian::LiouvillianMatrix;
use crate::model::{annihilation, DressedSpectrum};
use crate::{Matrix3c, C64};

/// The five stationary two-time correlations of the cavity field.
///
/// A name `⟨A(τ)B(0)⟩` is evaluated as `Tr{B e^{Lτ}(ρ_ss A)}`. This is the
/// ordering under which the closed forms below hold; in the usual
/// regression-theorem convention it is `⟨A(0)B(τ)⟩`, so the emission lines
/// come out at positive frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationKind {
    AdagA,
    AA,
    AdagAdag,
    AAdag,
    XX,
}

impl CorrelationKind {
    pub const ALL: [CorrelationKind; 5] = [
        CorrelationKind::AdagA,
        CorrelationKind::AA,
        CorrelationKind::AdagAdag,
        CorrelationKind::AAdag,
        CorrelationKind::XX,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CorrelationKind::AdagA => "adag_a",
            CorrelationKind::AA => "a_a",
            CorrelationKind::AdagAdag => "adag_adag",
            CorrelationKind::AAdag => "a_adag",
            CorrelationKind::XX => "x_x",
        }
    }

    /// `(A, B)` in the bare basis, first operator first.
    pub fn operators(self) -> (Matrix3c, Matrix3c) {
        let a = annihilation();
        let ad = a.adjoint();
        let x = a + ad;
        match self {
            CorrelationKind::AdagA => (ad, a),
            CorrelationKind::AA => (a, a),
            CorrelationKind::AdagAdag => (ad, ad),
            CorrelationKind::AAdag => (a, ad),
            CorrelationKind::XX => (x, x),
        }
    }
}

impl fmt::Display for CorrelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorrelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorrelationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownCorrelation(s.to_string()))
    }
}

/// Closed-form correlation on a `τ` grid. `constant` is the `τ`-independent
/// part, already included in `values`; it is the weight of the `ω = 0`
/// delta in the spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationSeries {
    pub kind: CorrelationKind,
    pub tau: Vec<f64>,
    pub values: Vec<C64>,
    pub constant: C64,
}

/// Closed forms with `η = ξω_z/(ω_z² − Ω²)`:
///
/// ```text
/// ⟨a†(τ)a⟩ = ⟨a(τ)a⟩ = ⟨a†(τ)a†⟩ = η²
/// ⟨a(τ)a†⟩ = ½(e^{λ0+ τ} + e^{λ0− τ}) + η²
/// ⟨x(τ)x⟩  = ½(e^{λ0+ τ} + e^{λ0− τ}) + 4η²
/// ```
pub fn correlation(kind: CorrelationKind, spectrum: &DressedSpectrum, rates: &RatePair, tau: &[f64]) -> CorrelationSeries {
    let eta2 = spectrum.eta * spectrum.eta;
    let bases = build_damping_bases(spectrum, rates);
    let lp = bases.eigenvalue(Level::Ground, Level::Plus);
    let lm = bases.eigenvalue(Level::Ground, Level::Minus);
    let (oscillating, constant) = match kind {
        CorrelationKind::AdagA | CorrelationKind::AA | CorrelationKind::AdagAdag => (false, eta2),
        CorrelationKind::AAdag => (true, eta2),
        CorrelationKind::XX => (true, 4.0 * eta2),
    };
    let constant = C64::new(constant, 0.0);
    let values = tau
        .iter()
        .map(|&t| {
            if oscillating {
                ((lp * t).exp() + (lm * t).exp()) * 0.5 + constant
            } else {
                constant
            }
        })
        .collect();
    CorrelationSeries {
        kind,
        tau: tau.to_vec(),
        values,
        constant,
    }
}

/// Numerical counterpart: `Tr{B_d e^{Lτ}(|E0⟩⟨E0| A_d)}` with `X_d = V†XV`.
pub fn correlation_regression(
    kind: CorrelationKind,
    spectrum: &DressedSpectrum,
    liouvillian: &LiouvillianMatrix,
    tau: &[f64],
) -> Vec<C64> {
    let (a, b) = kind.operators();
    let a_d = spectrum.to_dressed_operator(&a);
    let b_d = spectrum.to_dressed_operator(&b);
    let mut steady = Matrix3c::zeros();
    steady[(0, 0)] = C64::new(1.0, 0.0);
    let seed = steady * a_d;
    tau.iter()
        .map(|&t| (b_d * liouvillian.propagate(&seed, t)).trace())
        .collect()
}
