//! Low-frequency spectral Green function over all dyadic frequency rings:
//!
//! G^m_SF(t,x,a,y) = Σ_k ∫ e^{i(yθ + t√(λ_k(θ)+m²))} φ(|θ|) φ(√λ_k(θ))
//!                     e_k(x,θ) e_k(a,θ) dθ,   θ ∈ ℝ^{d-1} \ {0},
//!
//! reduced radially: the angular integral over S^{d-2} is the closed-form
//! kernel for d = 2, 3 (cosine / Bessel) and a Θ₁-quadrature beyond.

use super::{FieldValue, GammaSpec, GreenQuery, GreenRep};
use crate::cutoff::Cutoff;
use crate::error::{Error, Result};
use crate::oscquad::{integrate_oscillatory, PhaseSpec};
use crate::specfun::ai_unchecked;
use crate::ModelContext;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Bessel J₀ by power series (|x| <= 12) and Hankel expansion beyond.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 12.0 {
        let q = -0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..60 {
            term *= q / ((k * k) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1.0) {
                break;
            }
        }
        sum
    } else {
        // P - Q form with A_m = Π (2j-1)² / (8^m m!)
        let z2 = x * x;
        let a2 = 9.0 / 128.0;
        let a4 = 3675.0 / 32768.0;
        let a6 = 2_401_245.0 / 4_194_304.0;
        let p = 1.0 - a2 / z2 + a4 / (z2 * z2) - a6 / (z2 * z2 * z2);
        let a1 = 1.0 / 8.0;
        let a3 = 75.0 / 1024.0;
        let a5 = 59535.0 / 262144.0;
        let q = -a1 / x + a3 / (x * z2) - a5 / (x * z2 * z2);
        let w = x - PI / 4.0;
        (2.0 / (PI * x)).sqrt() * (w.cos() * p - w.sin() * q)
    }
}

/// How the S^{d-2} angular factor is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularRoute {
    /// cosine (d=2) / Bessel (d=3) closed forms; quadrature for d >= 4
    ClosedForm,
    /// explicit Θ₁-quadrature for every d >= 3
    Quadrature,
}

/// Surface measure of S^{n-1}.
fn sphere_measure(n: usize) -> f64 {
    // |S^{n-1}| = 2 π^{n/2} / Γ(n/2); only small n needed
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        4 => 2.0 * PI * PI,
        5 => 8.0 * PI * PI / 3.0,
        _ => {
            let mut v: f64 = if n % 2 == 0 { 2.0 * PI * PI } else { 8.0 * PI * PI / 3.0 };
            let mut m = if n % 2 == 0 { 4 } else { 5 };
            while m < n {
                v *= 2.0 * PI / m as f64;
                m += 2;
            }
            v
        }
    }
}

/// ∫_{S^{d-2}} e^{i r Θ₁} dσ(Θ) — real and even in r.
pub fn angular_kernel(d: usize, r: f64, route: AngularRoute) -> Result<f64> {
    if d < 2 {
        return Err(Error::argument("dimension must be >= 2"));
    }
    match (d, route) {
        (2, _) => Ok(2.0 * r.cos()),
        (3, AngularRoute::ClosedForm) => Ok(2.0 * PI * bessel_j0(r)),
        (d, _) => {
            // |S^{d-3}| ∫_0^π cos(r cos α) sin^{d-3} α dα
            let n = 2048.max((2.0 * r.abs()) as usize);
            let mut acc = 0.0;
            for i in 0..=n {
                let alpha = PI * i as f64 / n as f64;
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                acc += w * (r * alpha.cos()).cos() * alpha.sin().powi(d as i32 - 3);
            }
            Ok(sphere_measure(d - 2) * acc * PI / n as f64)
        }
    }
}

/// Options for the low-frequency evaluator.
#[derive(Debug, Clone, Copy)]
pub struct LowFreqOpts {
    /// deepest dyadic ring included: θ ranges over [3/4·2^{-j_max}, 2]
    pub j_max: u32,
    pub tol: f64,
    /// 0 = all modes allowed by the cutoffs
    pub kmax: usize,
    pub route: AngularRoute,
    /// time-frequency split χ(t λ_k(θ)/M)
    pub chi_filter: ChiFilter,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChiFilter {
    Full,
    Chi0 { m_split: f64 },
    OneMinusChi0 { m_split: f64 },
}

impl Default for LowFreqOpts {
    fn default() -> Self {
        LowFreqOpts {
            j_max: 4,
            tol: 1e-6,
            kmax: 0,
            route: AngularRoute::ClosedForm,
            chi_filter: ChiFilter::Full,
        }
    }
}

/// Modes allowed on ring j: ω_k <= (4 - ρ_min²)/ρ_min^{4/3} at ρ_min = (3/4)2^{-j}.
pub(crate) fn ring_mode_cap(ctx: &ModelContext, j: u32) -> Result<usize> {
    let rho_min = 0.75 * 2f64.powi(-(j as i32));
    let cap = (4.0 - rho_min * rho_min) / rho_min.powf(4.0 / 3.0);
    let k = ctx.airy.zeros_below(cap);
    if k >= ctx.airy.count() {
        return Err(Error::Argument(format!(
            "ring {j} needs modes past the zero table (ω <= {cap:.1}); build a larger ModelContext"
        )));
    }
    Ok(k + 2) // guard modes
}

fn chi_factor(chi0: &Cutoff, filter: ChiFilter, t: f64, lambda: f64) -> f64 {
    match filter {
        ChiFilter::Full => 1.0,
        ChiFilter::Chi0 { m_split } => chi0.value(t * lambda / m_split),
        ChiFilter::OneMinusChi0 { m_split } => 1.0 - chi0.value(t * lambda / m_split),
    }
}

/// The truncated low-frequency spectral value at (t, x, a, |y|), d >= 2.
pub fn green_low_freq(
    ctx: &ModelContext,
    mass: u8,
    t: f64,
    x: f64,
    a: f64,
    y_norm: f64,
    d: usize,
    opts: &LowFreqOpts,
) -> Result<FieldValue> {
    if d < 2 {
        return Err(Error::argument("dimension must be >= 2"));
    }
    if mass > 1 {
        return Err(Error::argument("mass must be 0 or 1"));
    }
    if x < 0.0 || a <= 0.0 {
        return Err(Error::domain("require x >= 0 and a > 0"));
    }
    let y_norm = y_norm.abs();
    let m2 = (mass as f64) * (mass as f64);
    let phi = ctx.cutoffs.phi;
    let psi2 = ctx.cutoffs.psi2;
    let chi0 = ctx.cutoffs.chi0;

    // jobs: (ring, mode)
    let mut jobs: Vec<(u32, usize)> = Vec::new();
    let mut mode_count = 0usize;
    for j in 0..=opts.j_max {
        let mut cap = ring_mode_cap(ctx, j)?;
        if opts.kmax > 0 {
            cap = cap.min(opts.kmax);
        }
        mode_count = mode_count.max(cap);
        for k in 1..=cap {
            jobs.push((j, k));
        }
    }
    let tol_each = opts.tol / jobs.len() as f64;

    let parts: Vec<Result<Complex64>> = jobs
        .par_iter()
        .map(|&(j, k)| {
            let omega = ctx.airy.zero(k)?;
            let lp = ctx.airy.lprime_at_zero(k)?;
            let scale_j = 2f64.powi(-(j as i32));
            let (rho_lo, rho_hi) = (0.75 * scale_j, 2.0 * scale_j);
            let lambda = move |rho: f64| rho * rho + omega * rho.powf(4.0 / 3.0);
            let dlambda = move |rho: f64| 2.0 * rho + 4.0 / 3.0 * omega * rho.powf(1.0 / 3.0);
            // skip modes whose λ-window misses the φ support entirely
            if lambda(rho_lo) >= 4.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let phase = move |rho: f64| t * (lambda(rho) + m2).sqrt();
            let dphase = move |rho: f64| t * dlambda(rho) / (2.0 * (lambda(rho) + m2).sqrt());
            let d2phase = move |rho: f64| {
                let h = 1e-7 * rho;
                (dphase(rho + h) - dphase(rho - h)) / (2.0 * h)
            };
            let sym = move |rho: f64| {
                let c = phi.value(rho)
                    * phi.value(lambda(rho).sqrt())
                    * psi2.value(rho / scale_j)
                    * chi_factor(&chi0, opts.chi_filter, t, lambda(rho));
                if c == 0.0 {
                    return 0.0;
                }
                let r23 = rho.powf(2.0 / 3.0);
                c * rho.powi(d as i32 - 2) * 2.0 * PI * r23 / lp
                    * ai_unchecked(x * r23 - omega)
                    * ai_unchecked(a * r23 - omega)
            };

            let value = if d == 2 {
                // exact two-branch cosine kernel: e^{±i y ρ} in the phase
                let mut acc = Complex64::new(0.0, 0.0);
                for sign in [1.0, -1.0] {
                    let ph = move |rho: f64| phase(rho) + sign * y_norm * rho;
                    let dph = move |rho: f64| dphase(rho) + sign * y_norm;
                    let amplitude = move |rho: f64| Complex64::new(sym(rho), 0.0);
                    acc += integrate_oscillatory(
                        &PhaseSpec {
                            phase: &ph,
                            dphase: &dph,
                            d2phase: &d2phase,
                            amplitude: &amplitude,
                            interval: (rho_lo, rho_hi),
                            large_parameter: t.abs() + y_norm,
                        },
                        0.5 * tol_each,
                    )?;
                }
                acc
            } else {
                // angular kernel in the amplitude; pre-split for its
                // oscillation scale |y| since the phase callback excludes it
                let amplitude = move |rho: f64| {
                    let s = sym(rho);
                    if s == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    Complex64::new(
                        s * angular_kernel(d, rho * y_norm, opts.route).unwrap_or(f64::NAN),
                        0.0,
                    )
                };
                let sub = 1 + (y_norm * (rho_hi - rho_lo) / 1.5) as usize;
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..sub {
                    let lo = rho_lo + (rho_hi - rho_lo) * i as f64 / sub as f64;
                    let hi = rho_lo + (rho_hi - rho_lo) * (i + 1) as f64 / sub as f64;
                    acc += integrate_oscillatory(
                        &PhaseSpec {
                            phase: &phase,
                            dphase: &dphase,
                            d2phase: &d2phase,
                            amplitude: &amplitude,
                            interval: (lo, hi),
                            large_parameter: t.abs() + y_norm,
                        },
                        tol_each / sub as f64,
                    )?;
                }
                acc
            };
            Ok(value)
        })
        .collect();

    let mut value = Complex64::new(0.0, 0.0);
    let mut last_ring = 0.0f64;
    for (idx, p) in parts.into_iter().enumerate() {
        let v = p?;
        if jobs[idx].0 == opts.j_max {
            last_ring += v.norm();
        }
        value += v;
    }
    Ok(FieldValue {
        value,
        mode_count,
        error_estimate: opts.tol + last_ring,
        empty_window: false,
    })
}

/// Registry member: the low-frequency spectral sum with default options.
#[derive(Default)]
pub struct LowFreqSum {
    pub opts: Option<LowFreqOpts>,
}

impl GreenRep for LowFreqSum {
    fn name(&self) -> &'static str {
        "low-freq"
    }
    fn describe(&self) -> &'static str {
        "low-frequency spectral sum over dyadic rings (radial reduction)"
    }
    fn supports(&self, q: &GreenQuery) -> bool {
        matches!(q.gamma, GammaSpec::LowFrequency { .. })
    }
    fn evaluate(&self, ctx: &ModelContext, q: &GreenQuery) -> Result<FieldValue> {
        let GammaSpec::LowFrequency { d } = q.gamma else {
            return Err(Error::argument("query is not low-frequency"));
        };
        let mut opts = self.opts.unwrap_or_default();
        opts.tol = q.tol;
        if q.kmax > 0 {
            opts.kmax = q.kmax;
        }
        green_low_freq(ctx, q.mass, q.t, q.x, q.a, q.y, d, &opts)
    }
}
