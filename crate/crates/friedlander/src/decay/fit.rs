//! Power-law exponent fitting and reflection-peak detection.

use crate::error::{Error, Result};
use crate::oscquad::linear_fit;

/// A sampled sup-norm decay record.
#[derive(Debug, Clone, Default)]
pub struct DecayCurve {
    pub t_values: Vec<f64>,
    pub sup_values: Vec<f64>,
    pub argmax_points: Vec<(f64, f64)>,
    pub fitted_exponent: f64,
    pub fit_residual: f64,
    /// (t, height) of detected local maxima
    pub peaks: Vec<(f64, f64)>,
}

impl DecayCurve {
    pub fn from_samples(t_values: Vec<f64>, sup_values: Vec<f64>, argmax: Vec<(f64, f64)>) -> Self {
        let mut c = DecayCurve {
            t_values,
            sup_values,
            argmax_points: argmax,
            ..Default::default()
        };
        c.peaks = detect_peaks(&c.t_values, &c.sup_values);
        c
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FitResult {
    /// decay exponent ρ in sup ~ C t^{-ρ}
    pub exponent: f64,
    pub residual: f64,
    /// fitted prefactor C
    pub constant: f64,
    /// all samples equal: slope meaningless
    pub degenerate: bool,
}

/// Least-squares slope of log sup against log t; with `use_peaks_only`, the
/// envelope through the detected peaks is fitted instead.
pub fn fit_exponent(curve: &DecayCurve, use_peaks_only: bool) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = if use_peaks_only {
        if curve.peaks.len() < 4 {
            return Err(Error::Argument(format!(
                "peak-envelope fit needs at least 4 peaks, found {}",
                curve.peaks.len()
            )));
        }
        curve
            .peaks
            .iter()
            .filter(|(t, s)| *t > 0.0 && *s > 0.0)
            .map(|(t, s)| (t.ln(), s.ln()))
            .collect()
    } else {
        if curve.t_values.len() < 6 {
            return Err(Error::argument("exponent fit needs at least 6 samples"));
        }
        curve
            .t_values
            .iter()
            .zip(&curve.sup_values)
            .filter(|(t, s)| **t > 0.0 && **s > 0.0)
            .map(|(t, s)| (t.ln(), s.ln()))
            .collect()
    };
    if pts.len() < 3 {
        return Err(Error::argument("too few positive samples for a fit"));
    }
    let spread = pts
        .iter()
        .map(|p| p.1)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    let degenerate = spread.1 - spread.0 < 1e-12;
    let (slope, icept, residual) = linear_fit(&pts);
    Ok(FitResult {
        exponent: -slope,
        residual,
        constant: icept.exp(),
        degenerate,
    })
}

/// Local maxima of the sampled curve with quadratic sub-grid refinement.
pub fn detect_peaks(t: &[f64], s: &[f64]) -> Vec<(f64, f64)> {
    let mut peaks = Vec::new();
    for i in 1..t.len().saturating_sub(1) {
        if s[i] > s[i - 1] && s[i] >= s[i + 1] {
            // parabola through the three samples
            let (t0, t1, t2) = (t[i - 1], t[i], t[i + 1]);
            let (s0, s1, s2) = (s[i - 1], s[i], s[i + 1]);
            let d1 = (s1 - s0) / (t1 - t0);
            let d2 = (s2 - s1) / (t2 - t1);
            let curv = (d2 - d1) / (0.5 * (t2 - t0));
            if curv < 0.0 {
                let tp = t1 - (d1 + 0.5 * curv * (t1 - t0)) / curv;
                let tp = tp.clamp(t0, t2);
                // height from the same parabola
                let sp = s1 + 0.5 * (d1 + 0.5 * curv * (t1 - t0)).powi(2) / (-curv);
                peaks.push((tp, sp.max(s1)));
            } else {
                peaks.push((t1, s1));
            }
        }
    }
    peaks
}

/// Reflection-peak times t_n = 4 n √a √(1+a), n = 1..n_max.
pub fn peak_times(a: f64, n_max: usize) -> Result<Vec<f64>> {
    if !(a > 0.0) {
        return Err(Error::argument("source distance must be positive"));
    }
    Ok((1..=n_max)
        .map(|n| 4.0 * n as f64 * a.sqrt() * (1.0 + a).sqrt())
        .collect())
}

/// The lattice cap √a / h^{1/3}: beyond it the fixed-peak envelope law
/// changes regime; callers should warn when requesting more peaks.
pub fn peak_count_cap(a: f64, h: f64) -> f64 {
    a.sqrt() / h.powf(1.0 / 3.0)
}
