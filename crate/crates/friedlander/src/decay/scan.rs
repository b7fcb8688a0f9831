//! Sup-norm scans over the propagation cone.
//!
//! The scans share quadrature nodes across the whole (x, y) grid: the
//! integrand is sampled on a uniform frequency grid (the tangential symbol
//! is smooth and compactly supported, so uniform sampling is spectrally
//! accurate), an FFT evaluates all y at once, and one local refinement pass
//! with the independent adaptive evaluator polishes and cross-checks the
//! coarse argmax.

use crate::decay::fit::DecayCurve;
use crate::error::{Error, Result};
use crate::green::lowfreq::{green_low_freq, LowFreqOpts};
use crate::green::spectral::{green_high_freq, mode_window};
use crate::green::{GammaSpec, GreenQuery};
use crate::specfun::ai_unchecked;
use crate::ModelContext;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::sync::Arc;

/// Scan geometry: x-grid and y-window with target resolution.
#[derive(Debug, Clone, Copy)]
pub struct ScanGrid {
    pub x_lo: f64,
    pub x_hi: f64,
    pub nx: usize,
    /// most negative y scanned; the window is [y_min, 0]
    pub y_min: f64,
    /// upper bound on the y-grid spacing
    pub dy_target: f64,
    /// run the refinement pass with the adaptive evaluator
    pub refine: bool,
}

impl ScanGrid {
    /// x-step a/64 over [0, 2a]; y resolves min(γ^{3/2}, ht)/8 near the
    /// front; cone edge at -(1+γ)t - 4γ^{3/2}.
    pub fn high_freq_default(h: f64, a: f64, gamma: f64, t: f64) -> Self {
        ScanGrid {
            x_lo: 0.0,
            x_hi: 2.0 * a,
            nx: 129,
            y_min: -((1.0 + gamma) * t.abs() + 4.0 * gamma.powf(1.5)),
            dy_target: (gamma.powf(1.5)).min(h * t.abs().max(h)) / 8.0,
            refine: true,
        }
    }

    /// Low-frequency cone: group velocities reach ~2^{j} on ring j, but the
    /// dominant front sits at |y| of a few t; scan a four-fold cone.
    pub fn low_freq_default(a: f64, t: f64) -> Self {
        ScanGrid {
            x_lo: 0.0,
            x_hi: 2.0 * a,
            nx: 33,
            y_min: -4.0 * t.abs().max(1.0) - 8.0,
            dy_target: 0.35,
            refine: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanPoint {
    pub sup: f64,
    pub argmax: (f64, f64),
    /// the refinement pass disagreed with the coarse grid (too coarse)
    pub resolution_warning: bool,
}

fn next_pow2(n: usize) -> usize {
    let mut p = 1024;
    while p < n {
        p *= 2;
    }
    p
}

/// Shared scan core: given per-node complex samples `coef[i][..]` as
/// (mode index, coefficient) and the per-mode Airy argument builder,
/// evaluate max_{x,y} |Σ_i e^{i y ν_i} F_x(node_i)| via FFT.
struct FftScan {
    /// frequency nodes ν_i (the y-conjugate variable), uniform
    nu0: f64,
    dnu: f64,
    n_samples: usize,
    n_fft: usize,
    /// y spacing of the transform output
    dy: f64,
}

impl FftScan {
    /// nodes ν ∈ [lo, hi], spacing fine enough for `max_internal_osc`
    /// radians of sampled-phase variation and a y-window reaching `y_span`.
    fn plan(lo: f64, hi: f64, max_internal_osc: f64, y_span: f64, dy_target: f64) -> FftScan {
        let range = hi - lo;
        let n_osc = (max_internal_osc * 4.0 / (2.0 * PI)).ceil() as usize;
        let n_nyq = (range * (y_span + 4.0) / PI).ceil() as usize;
        let n_samples = n_osc.max(n_nyq).max(512);
        let dnu = range / n_samples as f64;
        let period = 2.0 * PI / dnu;
        let n_fft = next_pow2(((period / dy_target).ceil() as usize).max(2 * n_samples))
            .min(1 << 22);
        FftScan {
            nu0: lo + 0.5 * dnu,
            dnu,
            n_samples,
            n_fft,
            dy: 2.0 * PI / (dnu * n_fft as f64),
        }
    }

    fn node(&self, i: usize) -> f64 {
        self.nu0 + i as f64 * self.dnu
    }
}

/// max over the y-window of |e^{iyν₀}out[j(y)] + e^{-iyν₀}out[j(-y)]|,
/// returning (max, y at max). `out` is the unnormalized inverse DFT of the
/// samples; the Δν weight is applied here.
fn scan_y_window(scan: &FftScan, out: &[Complex64], y_min: f64) -> (f64, f64) {
    let n = scan.n_fft;
    let j_max = ((-y_min / scan.dy).ceil() as usize).min(n / 2 - 1);
    let rot_step = Complex64::from_polar(1.0, 2.0 * scan.dy * scan.nu0);
    let mut rot = Complex64::new(1.0, 0.0); // e^{-2iyν₀} at y = 0
    let mut best = (f64::NEG_INFINITY, 0.0);
    for jj in 0..=j_max {
        // y = -jj·dy: G = e^{iyν₀} (out[n-jj] + e^{-2iyν₀} out[jj])
        let a = if jj == 0 { out[0] } else { out[n - jj] };
        let b = out[jj];
        let mag = (a + rot * b).norm() * scan.dnu;
        if mag > best.0 {
            best = (mag, -(jj as f64) * scan.dy);
        }
        rot *= rot_step;
        if jj % 1024 == 1023 {
            rot /= rot.norm(); // keep the incremental rotation on the circle
        }
    }
    best
}

/// High-frequency sup-norm scan at fixed t.
pub fn sup_scan_high_freq(
    ctx: &ModelContext,
    mass: u8,
    h: f64,
    a: f64,
    gamma: f64,
    t: f64,
    grid: Option<ScanGrid>,
) -> Result<ScanPoint> {
    let grid = grid.unwrap_or_else(|| ScanGrid::high_freq_default(h, a, gamma, t));
    let Some((k_lo, k_hi)) = mode_window(ctx, h, gamma, 2) else {
        return Ok(ScanPoint {
            sup: 0.0,
            argmax: (grid.x_lo, 0.0),
            resolution_warning: false,
        });
    };
    let m2 = (mass as f64) * (mass as f64);

    // internal oscillation of the sampled factor: the t-phase plus the two
    // Airy factors
    let mut max_osc: f64 = 0.0;
    for k in k_lo..=k_hi {
        let omega = ctx.airy.zeros[k - 1];
        for ie in 0..=4 {
            let eta: f64 = 0.5 + 0.25 * ie as f64;
            let lam = (eta / h).powi(2) + omega * (eta / h).powf(4.0 / 3.0);
            let dlam = 2.0 * eta / (h * h) + 4.0 / 3.0 * omega / h.powf(4.0 / 3.0) * eta.powf(1.0 / 3.0);
            max_osc = max_osc.max((t * dlam / (2.0 * (m2 + lam).sqrt())).abs());
        }
        let airy_osc = 2.0 * (omega + 1.0).sqrt() * grid.x_hi.max(a) * (1.5 / h).powf(2.0 / 3.0);
        max_osc = max_osc.max(airy_osc);
    }
    // ν = η/h over [0.5/h, 1.5/h]
    let scan = FftScan::plan(
        0.5 / h,
        1.5 / h,
        max_osc * h, // per unit ν
        -grid.y_min,
        grid.dy_target,
    );

    // per-node, per-mode coefficients independent of x
    struct NodeModes {
        s23: f64,
        entries: Vec<(f64, Complex64)>, // (ω_k, coefficient)
    }
    let psi1 = ctx.cutoffs.psi1;
    let psi2 = ctx.cutoffs.psi2;
    let h23 = h.powf(2.0 / 3.0);
    let nodes: Vec<NodeModes> = (0..scan.n_samples)
        .into_par_iter()
        .map(|i| {
            let eta = scan.node(i) * h;
            let c1 = psi1.value(eta);
            let s23 = (eta / h).powf(2.0 / 3.0);
            let mut entries = Vec::new();
            if c1 > 0.0 {
                for k in k_lo..=k_hi {
                    let omega = ctx.airy.zeros[k - 1];
                    let lam = (eta / h).powi(2) + omega * (eta / h).powf(4.0 / 3.0);
                    let c2 = psi1.value(h * lam.sqrt());
                    let c3 = psi2.value(h23 * omega / (eta.powf(2.0 / 3.0) * gamma));
                    let cut = c1 * c2 * c3;
                    if cut == 0.0 {
                        continue;
                    }
                    // sampled in ν = η/h: the Jacobian dη/dν = h cancels
                    // the 1/h^{d-1} prefactor at d = 2
                    let amp = cut * 2.0 * PI * s23 / ctx.airy.lprime[k - 1]
                        * ai_unchecked(a * s23 - omega);
                    if amp == 0.0 {
                        continue;
                    }
                    let phase = t * (m2 + lam).sqrt();
                    entries.push((omega, Complex64::from_polar(amp.abs(), phase) * amp.signum()));
                }
            }
            NodeModes { s23, entries }
        })
        .collect();

    let planner_fft = FftPlanner::<f64>::new().plan_fft_inverse(scan.n_fft);
    let xs: Vec<f64> = (0..grid.nx)
        .map(|ix| grid.x_lo + (grid.x_hi - grid.x_lo) * ix as f64 / (grid.nx - 1).max(1) as f64)
        .collect();

    let per_x: Vec<(f64, f64)> = xs
        .par_iter()
        .map_init(
            || (vec![Complex64::new(0.0, 0.0); scan.n_fft], Arc::clone(&planner_fft)),
            |(buf, fft), &x| {
                for v in buf.iter_mut() {
                    *v = Complex64::new(0.0, 0.0);
                }
                for (i, nm) in nodes.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(omega, c) in &nm.entries {
                        acc += c * ai_unchecked(x * nm.s23 - omega);
                    }
                    buf[i] = acc;
                }
                fft.process(buf);
                scan_y_window(&scan, buf, grid.y_min)
            },
        )
        .collect();

    let mut best = (f64::NEG_INFINITY, 0usize);
    for (ix, &(sup, _)) in per_x.iter().enumerate() {
        if sup > best.0 {
            best = (sup, ix);
        }
    }
    let (coarse_sup, ix) = best;
    let (mut sup, mut argmax) = (coarse_sup, (xs[ix], per_x[ix].1));

    let mut warning = false;
    if grid.refine {
        let dx = (grid.x_hi - grid.x_lo) / (grid.nx - 1).max(1) as f64;
        let mut best_off = (0i32, 0i32);
        for ox in -2..=2i32 {
            for oy in -2..=2i32 {
                let x = (argmax.0 + 0.5 * dx * ox as f64).clamp(grid.x_lo, grid.x_hi);
                let y = (argmax.1 + 0.5 * scan.dy * oy as f64).min(0.0);
                let q = GreenQuery {
                    mass,
                    h,
                    a,
                    gamma: GammaSpec::Dyadic(gamma),
                    t,
                    x,
                    y,
                    kmax: 0,
                    tol: (1e-3 * coarse_sup).max(1e-10),
                };
                if let Ok(v) = green_high_freq(ctx, &q) {
                    let mag = v.value.norm();
                    if mag > sup {
                        sup = mag;
                        argmax = (x, y);
                        best_off = (ox, oy);
                    }
                }
            }
        }
        // moved to the patch boundary, or disagrees badly with the grid
        warning = best_off.0.abs() == 2 && best_off.1.abs() == 2
            || (sup - coarse_sup).abs() > 0.5 * coarse_sup.max(1e-300);
    }

    Ok(ScanPoint {
        sup,
        argmax,
        resolution_warning: warning,
    })
}

/// Low-frequency sup-norm scan at fixed t (d = 2).
pub fn sup_scan_low_freq(
    ctx: &ModelContext,
    mass: u8,
    a: f64,
    t: f64,
    opts: &LowFreqOpts,
    grid: Option<ScanGrid>,
) -> Result<ScanPoint> {
    let grid = grid.unwrap_or_else(|| ScanGrid::low_freq_default(a, t));
    let m2 = (mass as f64) * (mass as f64);
    let theta_min = 0.75 * 2f64.powi(-(opts.j_max as i32));
    let phi = ctx.cutoffs.phi;
    let cap_scale = 2f64.powi(opts.j_max as i32 + 1);

    // internal oscillation bound: t · max group velocity over the window
    let mut vmax: f64 = 1.0;
    {
        let k_cap = super::super::green::lowfreq::ring_mode_cap(ctx, opts.j_max)?;
        for ik in 0..=24 {
            let k = 1 + ik * k_cap.saturating_sub(1) / 24;
            let omega = ctx.airy.zeros[k - 1];
            for it in 0..=16 {
                let th = theta_min + (2.0 - theta_min) * it as f64 / 16.0;
                let lam = th * th + omega * th.powf(4.0 / 3.0);
                if lam > 4.2 {
                    continue;
                }
                let dlam = 2.0 * th + 4.0 / 3.0 * omega * th.powf(1.0 / 3.0);
                vmax = vmax.max(dlam / (2.0 * (lam + m2).sqrt()));
            }
        }
    }
    let scan = FftScan::plan(
        theta_min,
        2.0,
        t.abs() * vmax * (2.0 - theta_min),
        -grid.y_min,
        grid.dy_target,
    );

    struct NodeModes {
        th23: f64,
        entries: Vec<(f64, Complex64)>,
    }
    let nodes: Vec<NodeModes> = (0..scan.n_samples)
        .into_par_iter()
        .map(|i| {
            let th = scan.node(i);
            let th23 = th.powf(2.0 / 3.0);
            // dyadic ring cap: Σ_{j<=jmax} ψ₂(2^jθ) = φ(θ) - φ(2^{jmax+1}θ)
            let w_cap = phi.value(th) - phi.value(cap_scale * th);
            let mut entries = Vec::new();
            if w_cap > 0.0 {
                let omega_cap = (4.0 - th * th) / th.powf(4.0 / 3.0);
                let k_hi = ctx.airy.zeros_below(omega_cap).min(ctx.airy.count());
                for k in 1..=k_hi {
                    let omega = ctx.airy.zeros[k - 1];
                    let lam = th * th + omega * th.powf(4.0 / 3.0);
                    let c = w_cap * phi.value(lam.sqrt());
                    if c == 0.0 {
                        continue;
                    }
                    let amp = c * 2.0 * PI * th23 / ctx.airy.lprime[k - 1]
                        * ai_unchecked(a * th23 - omega);
                    let phase = t * (lam + m2).sqrt();
                    entries
                        .push((omega, Complex64::from_polar(amp.abs(), phase) * amp.signum()));
                }
            }
            NodeModes { th23, entries }
        })
        .collect();

    let planner_fft = FftPlanner::<f64>::new().plan_fft_inverse(scan.n_fft);
    let xs: Vec<f64> = (0..grid.nx)
        .map(|ix| grid.x_lo + (grid.x_hi - grid.x_lo) * ix as f64 / (grid.nx - 1).max(1) as f64)
        .collect();

    let per_x: Vec<(f64, f64)> = xs
        .par_iter()
        .map_init(
            || (vec![Complex64::new(0.0, 0.0); scan.n_fft], Arc::clone(&planner_fft)),
            |(buf, fft), &x| {
                for v in buf.iter_mut() {
                    *v = Complex64::new(0.0, 0.0);
                }
                for (i, nm) in nodes.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(omega, c) in &nm.entries {
                        acc += c * ai_unchecked(x * nm.th23 - omega);
                    }
                    buf[i] = acc;
                }
                fft.process(buf);
                scan_y_window(&scan, buf, grid.y_min)
            },
        )
        .collect();

    let mut best = (f64::NEG_INFINITY, 0usize);
    for (ix, &(sup, _)) in per_x.iter().enumerate() {
        if sup > best.0 {
            best = (sup, ix);
        }
    }
    let (coarse_sup, ix) = best;
    let (mut sup, mut argmax) = (coarse_sup, (xs[ix], per_x[ix].1));

    let mut warning = false;
    if grid.refine {
        let dx = (grid.x_hi - grid.x_lo) / (grid.nx - 1).max(1) as f64;
        let mut local = *opts;
        local.tol = (1e-3 * coarse_sup).max(1e-9);
        let mut best_off = (0i32, 0i32);
        for ox in -1..=1i32 {
            for oy in -1..=1i32 {
                let x = (argmax.0 + 0.5 * dx * ox as f64).clamp(grid.x_lo, grid.x_hi);
                let y = (argmax.1 + 0.5 * scan.dy * oy as f64).min(0.0);
                if let Ok(v) = green_low_freq(ctx, mass, t, x, a, y, 2, &local) {
                    let mag = v.value.norm();
                    if mag > sup {
                        sup = mag;
                        argmax = (x, y);
                        best_off = (ox, oy);
                    }
                }
            }
        }
        warning = best_off.0.abs() == 1 && best_off.1.abs() == 1
            && (sup - coarse_sup).abs() > 0.5 * coarse_sup.max(1e-300);
    }

    Ok(ScanPoint {
        sup,
        argmax,
        resolution_warning: warning,
    })
}

/// Unified scan entry: dispatches on the γ marker.
pub fn sup_scan(
    ctx: &ModelContext,
    mass: u8,
    h: f64,
    a: f64,
    gamma: GammaSpec,
    t: f64,
    grid: Option<ScanGrid>,
) -> Result<ScanPoint> {
    match gamma {
        GammaSpec::Dyadic(g) => sup_scan_high_freq(ctx, mass, h, a, g, t, grid),
        GammaSpec::LowFrequency { d: 2 } => {
            sup_scan_low_freq(ctx, mass, a, t, &LowFreqOpts::default(), grid)
        }
        GammaSpec::LowFrequency { d } => Err(Error::Argument(format!(
            "low-frequency scans are two-dimensional (got d = {d})"
        ))),
    }
}

/// Scan a whole t-grid into a decay curve (high-frequency).
pub fn decay_curve_high_freq(
    ctx: &ModelContext,
    mass: u8,
    h: f64,
    a: f64,
    gamma: f64,
    t_list: &[f64],
) -> Result<DecayCurve> {
    let mut sups = Vec::with_capacity(t_list.len());
    let mut args = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let p = sup_scan_high_freq(ctx, mass, h, a, gamma, t, None)?;
        sups.push(p.sup);
        args.push(p.argmax);
    }
    Ok(DecayCurve::from_samples(t_list.to_vec(), sups, args))
}

/// Scan a whole t-grid into a decay curve (low-frequency, d = 2).
pub fn decay_curve_low_freq(
    ctx: &ModelContext,
    mass: u8,
    a: f64,
    opts: &LowFreqOpts,
    t_list: &[f64],
) -> Result<DecayCurve> {
    let mut sups = Vec::with_capacity(t_list.len());
    let mut args = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let p = sup_scan_low_freq(ctx, mass, a, t, opts, None)?;
        sups.push(p.sup);
        args.push(p.argmax);
    }
    Ok(DecayCurve::from_samples(t_list.to_vec(), sups, args))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn high_freq_scan_matches_direct_evaluator_at_argmax() {
        let ctx = ModelContext::new(64).unwrap();
        let (mass, h, a, gamma, t) = (0u8, 1.0 / 128.0, 0.25, 0.25, 1.2);
        let p = sup_scan_high_freq(&ctx, mass, h, a, gamma, t, None).unwrap();
        assert!(p.sup > 0.0);
        let q = GreenQuery {
            mass,
            h,
            a,
            gamma: GammaSpec::Dyadic(gamma),
            t,
            x: p.argmax.0,
            y: p.argmax.1,
            kmax: 0,
            tol: 1e-4 * p.sup,
        };
        let direct = green_high_freq(&ctx, &q).unwrap().value.norm();
        assert!(
            (direct - p.sup).abs() < 0.02 * p.sup,
            "scan sup {} vs direct {direct}",
            p.sup
        );
    }

    #[test]
    fn early_peak_sits_near_source() {
        // at small t the maximum stays near (x, y) ~ (a, 0)
        let ctx = ModelContext::new(64).unwrap();
        let p = sup_scan_high_freq(&ctx, 0, 1.0 / 128.0, 0.25, 0.25, 0.05, None).unwrap();
        assert!(
            p.argmax.1.abs() < 0.2,
            "argmax y = {} at t ~ 0",
            p.argmax.1
        );
    }

    #[test]
    fn low_freq_scan_consistent_with_pointwise() {
        let ctx = ModelContext::standard();
        let opts = LowFreqOpts {
            j_max: 2,
            tol: 1e-6,
            ..Default::default()
        };
        let p = sup_scan_low_freq(&ctx, 0, 1.0, 6.0, &opts, None).unwrap();
        let direct = green_low_freq(&ctx, 0, 6.0, p.argmax.0, 1.0, p.argmax.1, 2, &opts)
            .unwrap()
            .value
            .norm();
        assert!(
            (direct - p.sup).abs() < 0.05 * p.sup,
            "scan {} vs direct {direct}",
            p.sup
        );
    }
}
