//! High-frequency spectral sum over gallery modes (d = 2):
//!
//! G^m_{h,γ}(t,x,a,y) = Σ_k (1/h) ∫ e^{i t √(m²+λ_k(η/h))} e^{i y η/h}
//!     ψ₁(|η|) ψ₁(h√λ_k) ψ₂(h^{2/3}ω_k/(|η|^{2/3}γ)) e_k(x,η/h) e_k(a,η/h) dη,
//!
//! with the η-line split into the two signed branches, so the value at -t is
//! the conjugate of the value at +t.

use super::{FieldValue, GreenQuery, GreenRep, Registry};
use crate::error::{Error, Result};
use crate::oscquad::{integrate_oscillatory, PhaseSpec};
use crate::specfun::ai_unchecked;
use crate::ModelContext;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// ψ₂-window bounds on ω over the η-support [1/2, 3/2]:
/// ψ₂(h^{2/3} ω / (η^{2/3} γ)) ≠ 0 needs ω ∈ (γ/h^{2/3})·[3/4·(1/2)^{2/3}, 2·(3/2)^{2/3}].
pub(crate) fn omega_window(h: f64, gamma: f64) -> (f64, f64) {
    let scale = gamma / h.powf(2.0 / 3.0);
    (
        scale * 0.75 * 0.5f64.powf(2.0 / 3.0),
        scale * 2.0 * 1.5f64.powf(2.0 / 3.0),
    )
}

/// Inclusive 1-based mode range intersecting the cutoff window, plus
/// `guard` modes on each side (they must integrate to zero).
pub(crate) fn mode_window(
    ctx: &ModelContext,
    h: f64,
    gamma: f64,
    guard: usize,
) -> Option<(usize, usize)> {
    let (w_lo, w_hi) = omega_window(h, gamma);
    let k_lo = ctx.airy.zeros_below(w_lo) + 1; // first zero >= w_lo
    let k_hi = ctx.airy.zeros_below(w_hi); // last zero < w_hi
    if k_lo > k_hi {
        return None;
    }
    let lo = k_lo.saturating_sub(guard).max(1);
    let hi = (k_hi + guard).min(ctx.airy.count());
    Some((lo, hi))
}

/// One signed η-branch of the mode-k integral. `sign` multiplies y.
fn mode_branch_integral(
    ctx: &ModelContext,
    q: &GreenQuery,
    gamma: f64,
    k: usize,
    sign: f64,
    tol: f64,
) -> Result<Complex64> {
    let omega = ctx.airy.zero(k)?;
    let lp = ctx.airy.lprime_at_zero(k)?;
    let h = q.h;
    let m2 = (q.mass as f64) * (q.mass as f64);
    let (t, x, a, y) = (q.t, q.x, q.a, sign * q.y);
    let h43 = h.powf(4.0 / 3.0);
    let lambda = move |eta: f64| (eta / h).powi(2) + omega * (eta / h).powf(4.0 / 3.0);
    let dlambda = move |eta: f64| 2.0 * eta / (h * h) + 4.0 / 3.0 * omega / h43 * eta.powf(1.0 / 3.0);
    let d2lambda = move |eta: f64| 2.0 / (h * h) + 4.0 / 9.0 * omega / h43 * eta.powf(-2.0 / 3.0);

    let phase = move |eta: f64| t * (m2 + lambda(eta)).sqrt() + y * eta / h;
    let dphase = move |eta: f64| t * dlambda(eta) / (2.0 * (m2 + lambda(eta)).sqrt()) + y / h;
    let d2phase = move |eta: f64| {
        let l = m2 + lambda(eta);
        t * (d2lambda(eta) / (2.0 * l.sqrt()) - dlambda(eta).powi(2) / (4.0 * l.powf(1.5)))
    };

    let cut = &ctx.cutoffs;
    let psi1 = cut.psi1;
    let psi2 = cut.psi2;
    let h23 = h.powf(2.0 / 3.0);
    let amplitude = move |eta: f64| {
        let loc1 = psi1.value(eta);
        if loc1 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let lam = lambda(eta);
        let loc2 = psi1.value(h * (m2 + lam - m2).max(0.0).sqrt());
        if loc2 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let loc3 = psi2.value(h23 * omega / (eta.powf(2.0 / 3.0) * gamma));
        if loc3 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let s23 = (eta / h).powf(2.0 / 3.0);
        let pair = 2.0 * PI * s23 / lp * ai_unchecked(x * s23 - omega) * ai_unchecked(a * s23 - omega);
        Complex64::new(loc1 * loc2 * loc3 * pair / h, 0.0)
    };

    integrate_oscillatory(
        &PhaseSpec {
            phase: &phase,
            dphase: &dphase,
            d2phase: &d2phase,
            amplitude: &amplitude,
            interval: (0.5, 1.5),
            large_parameter: (t.abs() + y.abs()) / h + 1.0,
        },
        tol,
    )
}

/// The k-truncated, η-quadrature value of the high-frequency spectral sum.
pub fn green_high_freq(ctx: &ModelContext, q: &GreenQuery) -> Result<FieldValue> {
    q.validate()?;
    let gamma = q.dyadic_gamma()?;
    let window = mode_window(ctx, q.h, gamma, 2);
    let Some((k_lo, mut k_hi)) = window else {
        return Ok(FieldValue::zero_empty());
    };
    if q.kmax > 0 {
        if q.kmax < k_hi.saturating_sub(2) {
            return Err(Error::Argument(format!(
                "kmax = {} truncates inside the cutoff window (needs >= {})",
                q.kmax,
                k_hi - 2
            )));
        }
        k_hi = k_hi.min(q.kmax);
    }
    let jobs: Vec<(usize, f64)> = (k_lo..=k_hi)
        .flat_map(|k| [(k, 1.0), (k, -1.0)])
        .collect();
    let tol = q.tol / jobs.len() as f64;
    let parts: Vec<Result<Complex64>> = jobs
        .par_iter()
        .map(|&(k, sign)| mode_branch_integral(ctx, q, gamma, k, sign, tol))
        .collect();
    let mut value = Complex64::new(0.0, 0.0);
    for p in parts {
        value += p?;
    }
    Ok(FieldValue {
        value,
        mode_count: k_hi - k_lo + 1,
        error_estimate: q.tol,
        empty_window: false,
    })
}

/// Registry member: the gallery-mode spectral sum.
pub struct SpectralSum;

impl GreenRep for SpectralSum {
    fn name(&self) -> &'static str {
        "spectral"
    }
    fn describe(&self) -> &'static str {
        "high-frequency gallery-mode spectral sum (d = 2)"
    }
    fn supports(&self, q: &GreenQuery) -> bool {
        matches!(q.gamma, super::GammaSpec::Dyadic(_))
    }
    fn evaluate(&self, ctx: &ModelContext, q: &GreenQuery) -> Result<FieldValue> {
        green_high_freq(ctx, q)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::builtin()
    }
}
