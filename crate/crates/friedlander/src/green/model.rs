//! The one-dimensional model integral
//! `v(z, t) = ∫ e^{i t (zη - √(η² + c η^{4/3} + m²))} ψ₁(η) dη`
//! and its degenerate-critical-point analysis, plus the dyadic-ring
//! degeneracy scan of the low-frequency Klein-Gordon phase.

use crate::cutoff::{Cutoff, CutoffKind};
use crate::error::{Error, Result};
use crate::oscquad::{integrate_oscillatory, PhaseSpec};
use crate::specfun::AiryTable;
use num_complex::Complex64;

/// Dispersion symbol w(η) = √(η² + c η^{4/3} + m²) and derivatives, η > 0.
#[derive(Debug, Clone, Copy)]
pub struct DispersionSymbol {
    pub mass: u8,
    pub c: f64,
}

impl DispersionSymbol {
    pub fn new(mass: u8, c: f64) -> Result<Self> {
        if mass > 1 {
            return Err(Error::argument("mass must be 0 or 1"));
        }
        if c < 0.0 {
            return Err(Error::argument("curvature coefficient c must be >= 0"));
        }
        Ok(DispersionSymbol { mass, c })
    }

    #[inline]
    pub fn value(&self, eta: f64) -> f64 {
        let m2 = (self.mass as f64) * (self.mass as f64);
        (eta * eta + self.c * eta.powf(4.0 / 3.0) + m2).sqrt()
    }

    #[inline]
    pub fn deriv(&self, eta: f64) -> f64 {
        let w = self.value(eta);
        (2.0 * eta + 4.0 / 3.0 * self.c * eta.powf(1.0 / 3.0)) / (2.0 * w)
    }

    #[inline]
    pub fn second_deriv(&self, eta: f64) -> f64 {
        let w = self.value(eta);
        let dn = 2.0 * eta + 4.0 / 3.0 * self.c * eta.powf(1.0 / 3.0);
        (2.0 + 4.0 / 9.0 * self.c * eta.powf(-2.0 / 3.0)) / (2.0 * w) - dn * dn / (4.0 * w * w * w)
    }
}

/// v(z, t): oscillatory quadrature over the ψ₁-support.
pub fn model_integral(mass: u8, c: f64, z: f64, t: f64, tol: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::argument("model integral requires t > 0"));
    }
    let sym = DispersionSymbol::new(mass, c)?;
    let psi1 = Cutoff::new(CutoffKind::Psi1);
    let phase = move |s: f64| t * (z * s - sym.value(s));
    let dphase = move |s: f64| t * (z - sym.deriv(s));
    let d2phase = move |s: f64| -t * sym.second_deriv(s);
    let amplitude = move |s: f64| Complex64::new(psi1.value(s), 0.0);
    integrate_oscillatory(
        &PhaseSpec {
            phase: &phase,
            dphase: &dphase,
            d2phase: &d2phase,
            amplitude: &amplitude,
            interval: (0.5, 1.5),
            large_parameter: t,
        },
        tol,
    )
}

/// If the second derivative of the phase of `v` vanishes at some η₀ in the
/// ψ₁-support, returns (η₀, z₀) with z₀ = w'(η₀) making the first derivative
/// vanish there too (a degenerate critical point of order two).
pub fn find_degenerate(mass: u8, c: f64) -> Result<Option<(f64, f64)>> {
    let sym = DispersionSymbol::new(mass, c)?;
    // phase'' = -t w''; search a sign change of w'' on [1/2, 3/2]
    const N: usize = 3000;
    let (lo, hi) = (0.5f64, 1.5f64);
    let samples: Vec<f64> = (0..=N)
        .map(|i| sym.second_deriv(lo + (hi - lo) * i as f64 / N as f64))
        .collect();
    let scale = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale < 1e-12 {
        // w'' ≡ 0 (linear symbol): no isolated degenerate point
        return Ok(None);
    }
    for i in 0..N {
        let (prev, cur) = (samples[i], samples[i + 1]);
        if prev * cur < 0.0 {
            let (mut a, mut b, mut fa) = (
                lo + (hi - lo) * i as f64 / N as f64,
                lo + (hi - lo) * (i + 1) as f64 / N as f64,
                prev,
            );
            for _ in 0..90 {
                let m = 0.5 * (a + b);
                let fm = sym.second_deriv(m);
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            let eta0 = 0.5 * (a + b);
            return Ok(Some((eta0, sym.deriv(eta0))));
        }
    }
    Ok(None)
}

/// The bracket term of the second ρ̃-derivative of the low-frequency phase
/// on dyadic ring j, mode k, expressed in z = ρ̃^{2/3}:
/// f_{k,j}(z) = (2/9) W z^{-1} (1 - W z²) - (1/9) W 4^{-j} z² + 4^{-j},
/// with W = 2^{-4j/3} ω_k.
pub fn kg_phase_bracket(table: &AiryTable, k: usize, j: u32, z: f64) -> Result<f64> {
    let w = table.zero(k)? * 2f64.powf(-4.0 * j as f64 / 3.0);
    let four_mj = 4f64.powi(-(j as i32));
    Ok(2.0 / 9.0 * w / z * (1.0 - w * z * z) - w / 9.0 * four_mj * z * z + four_mj)
}

/// Scan ring j for the unique mode whose bracket term changes sign for
/// ρ̃ on the ψ₂-support. Returns (k, ρ̃*) with the root, or None.
pub fn kg_degenerate_scan(table: &AiryTable, j: u32) -> Result<Option<(usize, f64)>> {
    // z = ρ̃^{2/3} window from supp ψ₂ = [3/4, 2]
    let z_lo = 0.75f64.powf(2.0 / 3.0);
    let z_hi = 2.0f64.powf(2.0 / 3.0);
    // candidate modes: W = 2^{-4j/3} ω_k of order one; several modes may
    // vanish somewhere on the window, the degenerate one sits near ρ̃ = 1
    let scale = 2f64.powf(4.0 * j as f64 / 3.0);
    let mut best: Option<(usize, f64)> = None;
    for k in 1..=table.count() {
        let w = table.zero(k)? / scale;
        if w < 0.05 {
            continue;
        }
        if w > 20.0 {
            break;
        }
        let f_lo = kg_phase_bracket(table, k, j, z_lo)?;
        let f_hi = kg_phase_bracket(table, k, j, z_hi)?;
        if f_lo > 0.0 && f_hi < 0.0 {
            let (mut a, mut b) = (z_lo, z_hi);
            let mut fa = f_lo;
            for _ in 0..90 {
                let m = 0.5 * (a + b);
                let fm = kg_phase_bracket(table, k, j, m)?;
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            let rho_star = (0.5 * (a + b)).powf(1.5);
            let better = match best {
                None => true,
                Some((_, r)) => (rho_star - 1.0).abs() < (r - 1.0).abs(),
            };
            if better {
                best = Some((k, rho_star));
            }
        }
    }
    Ok(best)
}
