//! Signal-analysis helpers used by the figure scenarios and the acceptance
//! checks: a one-sided FFT amplitude spectrum, a peak finder with FWHM, and
//! a small linear least-squares fit.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    Rectangular,
    Hann,
}

impl Window {
    fn weight(self, k: usize, n: usize) -> f64 {
        match self {
            Window::Rectangular => 1.0,
            Window::Hann if n < 2 => 1.0,
            Window::Hann => 0.5 - 0.5 * (2.0 * PI * k as f64 / (n - 1) as f64).cos(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub omega: f64,
    pub amplitude: f64,
}

/// One-sided amplitude spectrum on angular frequencies `2πk/(N dt)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeSpectrum {
    pub omegas: Vec<f64>,
    pub amplitudes: Vec<f64>,
    pub bin_width: f64,
}

impl AmplitudeSpectrum {
    /// Largest line above the zero-frequency bin.
    pub fn dominant(&self) -> Line {
        self.max_in_band(self.bin_width * 0.5, f64::INFINITY)
            .unwrap_or(Line { omega: 0.0, amplitude: 0.0 })
    }

    pub fn max_in_band(&self, lo: f64, hi: f64) -> Option<Line> {
        self.omegas
            .iter()
            .zip(&self.amplitudes)
            .filter(|(w, _)| **w >= lo && **w <= hi)
            .map(|(&omega, &amplitude)| Line { omega, amplitude })
            .fold(None, |best: Option<Line>, l| match best {
                Some(b) if b.amplitude >= l.amplitude => Some(b),
                _ => Some(l),
            })
    }
}

/// Mean-subtracted, windowed FFT of uniformly sampled data. A pure cosine of
/// amplitude `A` on a bin shows up with amplitude `A`.
pub fn amplitude_spectrum(samples: &[f64], dt: f64, window: Window) -> Result<AmplitudeSpectrum> {
    let n = samples.len();
    if n < 4 {
        return Err(Error::InvalidGrid(format!("need at least 4 samples, got {n}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidGrid(format!("sample spacing must be positive, got {dt}")));
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let weights: Vec<f64> = (0..n).map(|k| window.weight(k, n)).collect();
    let gain: f64 = weights.iter().sum();
    let mut buf: Vec<C64> = samples
        .iter()
        .zip(&weights)
        .map(|(x, w)| C64::new((x - mean) * w, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let bin_width = 2.0 * PI / (n as f64 * dt);
    let half = n / 2 + 1;
    let omegas = (0..half).map(|k| k as f64 * bin_width).collect();
    let amplitudes = buf[..half]
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let one_sided = if k == 0 || (n.is_multiple_of(2) && k == n / 2) { 1.0 } else { 2.0 };
            one_sided * z.norm() / gain
        })
        .collect();
    Ok(AmplitudeSpectrum {
        omegas,
        amplitudes,
        bin_width,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub omega: f64,
    pub height: f64,
    pub fwhm: f64,
}

/// Local maxima at least `min_fraction` of the global maximum, located by
/// three-point parabolic refinement, with FWHM from linearly interpolated
/// half-height crossings (`NaN` when a crossing falls off the grid).
pub fn find_peaks(omegas: &[f64], values: &[f64], min_fraction: f64) -> Vec<Peak> {
    let n = values.len().min(omegas.len());
    if n < 3 {
        return Vec::new();
    }
    let top = values[..n].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut peaks = Vec::new();
    for i in 1..n - 1 {
        let (l, c, r) = (values[i - 1], values[i], values[i + 1]);
        if !(c > l && c >= r && c >= min_fraction * top) {
            continue;
        }
        let curvature = l - 2.0 * c + r;
        let shift = if curvature != 0.0 { 0.5 * (l - r) / curvature } else { 0.0 };
        let h = omegas[i + 1] - omegas[i];
        let omega = omegas[i] + shift.clamp(-1.0, 1.0) * h;
        let half = c / 2.0;
        let left = (0..i).rev().find(|&j| values[j] < half).map(|j| {
            let f = (half - values[j]) / (values[j + 1] - values[j]);
            omegas[j] + f * (omegas[j + 1] - omegas[j])
        });
        let right = (i + 1..n).find(|&j| values[j] < half).map(|j| {
            let f = (values[j - 1] - half) / (values[j - 1] - values[j]);
            omegas[j - 1] + f * (omegas[j] - omegas[j - 1])
        });
        let fwhm = match (left, right) {
            (Some(a), Some(b)) => b - a,
            _ => f64::NAN,
        };
        peaks.push(Peak { omega, height: c, fwhm });
    }
    peaks
}

/// Least-squares coefficients for `y ≈ Σ_k β_k columns[k]`.
pub fn least_squares(columns: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
    let rows = y.len();
    if columns.is_empty() || columns.iter().any(|c| c.len() != rows) {
        return Err(Error::InvalidGrid("design columns must match the data length".into()));
    }
    let a = DMatrix::from_fn(rows, columns.len(), |i, k| columns[k][i]);
    let b = DVector::from_column_slice(y);
    let svd = a.svd(true, true);
    let beta = svd
        .solve(&b, 1e-12)
        .map_err(|e| Error::Singular(format!("least squares: {e}")))?;
    Ok(beta.iter().copied().collect())
}

/// `sqrt(mean (a − b)²)`.
pub fn rms_distance(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    if n == 0 {
        return 0.0;
    }
    (a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / n as f64).sqrt()
}

pub fn max_abs_difference(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let h = (stop - start) / (n - 1) as f64;
            (0..n).map(|k| start + h * k as f64).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn on_bin_cosine() {
        let n = 1024;
        let dt = 0.1;
        let bin = 2.0 * PI / (n as f64 * dt);
        let w = 37.0 * bin;
        let x: Vec<f64> = (0..n).map(|k| 3.0 + 0.7 * (w * k as f64 * dt).cos()).collect();
        let s = amplitude_spectrum(&x, dt, Window::Rectangular).unwrap();
        let d = s.dominant();
        assert!((d.omega - w).abs() < 1e-12);
        assert!((d.amplitude - 0.7).abs() < 1e-12);
        assert!(s.amplitudes[0] < 1e-12);
        let hann = amplitude_spectrum(&x, dt, Window::Hann).unwrap().dominant();
        assert!((hann.omega - w).abs() < 1e-12);
    }

    #[test]
    fn lorentzian_peak_and_width() {
        let omegas = linspace(0.0, 2.0, 20001);
        let g = 0.01;
        let y: Vec<f64> = omegas.iter().map(|w| g / ((w - 0.8123).powi(2) + g * g)).collect();
        let peaks = find_peaks(&omegas, &y, 0.5);
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].omega - 0.8123).abs() < 1e-4);
        assert!((peaks[0].fwhm - 2.0 * g).abs() < 1e-4);
    }

    #[test]
    fn least_squares_recovers_planted_coefficients() {
        let t = linspace(0.0, 10.0, 500);
        let c1: Vec<f64> = t.iter().map(|_| 1.0).collect();
        let c2: Vec<f64> = t.iter().map(|x| x.sin()).collect();
        let y: Vec<f64> = t.iter().map(|x| 0.2 - 1.5 * x.sin()).collect();
        let beta = least_squares(&[c1, c2], &y).unwrap();
        assert!((beta[0] - 0.2).abs() < 1e-12 && (beta[1] + 1.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(amplitude_spectrum(&[1.0, 2.0], 0.1, Window::Hann).is_err());
        assert!(amplitude_spectrum(&[1.0; 8], 0.0, Window::Hann).is_err());
        assert!(least_squares(&[vec![1.0]], &[1.0, 2.0]).is_err());
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }
}
