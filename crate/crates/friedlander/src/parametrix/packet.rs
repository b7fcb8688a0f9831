//! Single reflected-wave packets V_N and their sum over the reflection
//! window: the Poisson resummation of the high-frequency spectral sum.
//!
//! With the two Airy integrals recomposed through the exact identity
//! Ai(w) = (|η|/h)^{1/3}/(2π) ∫ e^{(i/h)|η|(σ³/3+σ(…))} dσ, the N-th packet
//! is the 2D oscillatory integral (η > 0 branch; the η < 0 branch is the
//! same at mirrored y)
//!
//! V_N^±(t,x,a,y) = (γ/h) ∫∫ (η/h)^{4/3} ψ₁(η) ψ₁(η√(1+γA)) ψ₂(A)
//!     Ai((η/h)^{2/3}(x-γA)) Ai((η/h)^{2/3}(a-γA))
//!     e^{i[±yη/h + (t/h)√(η²(1+γA)+m²h²) - N L((η/h)^{2/3}γA)]} dA dη,
//!
//! and Σ_N (V_N^+ + V_N^-) equals the spectral sum exactly (Airy-Poisson).

use crate::error::{Error, Result};
use crate::green::{FieldValue, GammaSpec, GreenQuery, GreenRep};
use crate::oscquad::{integrate_fixed, PhaseSpec};
use crate::specfun::{ai_unchecked, l_prime, l_value};
use crate::ModelContext;
use num_complex::Complex64;
use rayon::prelude::*;

/// Minimal stationary-phase parameter λ_γ = γ^{3/2}/h for the packet form.
pub const MIN_LAMBDA_GAMMA: f64 = 5.0;

fn inner_a_integral(
    ctx: &ModelContext,
    q: &GreenQuery,
    gamma: f64,
    n: i64,
    eta: f64,
) -> Complex64 {
    let h = q.h;
    let m2 = (q.mass as f64) * (q.mass as f64);
    let (t, x, a) = (q.t, q.x, q.a);
    let s23 = (eta / h).powf(2.0 / 3.0);
    let nn = n as f64;
    let ref_root = (eta * eta * (1.0 + gamma) + m2 * h * h).sqrt();

    let phase = move |av: f64| {
        let root = (eta * eta * (1.0 + gamma * av) + m2 * h * h).sqrt();
        t / h * (root - ref_root) - nn * l_value_local(ctx, s23 * gamma * av)
    };
    let dphase = move |av: f64| {
        let root = (eta * eta * (1.0 + gamma * av) + m2 * h * h).sqrt();
        t / h * eta * eta * gamma / (2.0 * root) - nn * l_prime(&ctx.airy, s23 * gamma * av) * s23 * gamma
    };
    let d2phase = move |av: f64| {
        let hh = 1e-6;
        (dphase(av + hh) - dphase(av - hh)) / (2.0 * hh)
    };
    let psi1 = ctx.cutoffs.psi1;
    let psi2 = ctx.cutoffs.psi2;
    let amplitude = move |av: f64| {
        let c2 = psi2.value(av);
        if c2 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let c1 = psi1.value(eta * (1.0 + gamma * av).sqrt());
        if c1 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let pair = ai_unchecked(s23 * (x - gamma * av)) * ai_unchecked(s23 * (a - gamma * av));
        Complex64::new(c1 * c2 * pair, 0.0)
    };
    // amplitude-borne oscillation: the two Airy factors turn at rate
    // ~√|arg|·d(arg)/dA with d(arg)/dA = s23·γ
    let airy_osc = 2.0 * (s23 * gamma * 2.0 + 1.0).sqrt() * s23 * gamma * 1.27;
    integrate_fixed(
        &PhaseSpec {
            phase: &phase,
            dphase: &dphase,
            d2phase: &d2phase,
            amplitude: &amplitude,
            interval: (0.74, 2.01),
            large_parameter: (t.abs() / h * gamma + nn.abs() * s23 * gamma).max(1.0),
        },
        airy_osc,
    )
}

fn l_value_local(ctx: &ModelContext, omega: f64) -> f64 {
    l_value(&ctx.airy, omega)
}

/// One signed η-branch of the N-th packet (sign multiplies y).
fn packet_branch(
    ctx: &ModelContext,
    q: &GreenQuery,
    gamma: f64,
    n: i64,
    sign: f64,
) -> Result<Complex64> {
    let h = q.h;
    let m2 = (q.mass as f64) * (q.mass as f64);
    let (t, y) = (q.t, sign * q.y);
    let phase = move |eta: f64| {
        y * eta / h + t / h * (eta * eta * (1.0 + gamma) + m2 * h * h).sqrt()
    };
    let dphase = move |eta: f64| {
        y / h + t / h * eta * (1.0 + gamma) / (eta * eta * (1.0 + gamma) + m2 * h * h).sqrt()
    };
    let d2phase = move |eta: f64| {
        let hh = 1e-6;
        (dphase(eta + hh) - dphase(eta - hh)) / (2.0 * hh)
    };
    let psi1 = ctx.cutoffs.psi1;
    let amplitude = move |eta: f64| {
        let c1 = psi1.value(eta);
        if c1 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let inner = inner_a_integral(ctx, q, gamma, n, eta);
        gamma / h * (eta / h).powf(4.0 / 3.0) * c1 * inner
    };
    // the inner integral carries phase not seen by the outer dphase: the
    // A-criticality value moves with η through the t- and N·L-terms
    let extra_osc = t.abs() / h * gamma * 0.75
        + (n.abs() as f64) * 4.0 / 3.0 * (gamma * 2.01).powf(1.5) / h
        + 40.0;
    let v = integrate_fixed(
        &PhaseSpec {
            phase: &phase,
            dphase: &dphase,
            d2phase: &d2phase,
            amplitude: &amplitude,
            interval: (0.5, 1.5),
            large_parameter: (t.abs() + y.abs()) / h + 1.0,
        },
        extra_osc,
    );
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Accuracy {
            context: format!("packet quadrature failed for N = {n}"),
            best: v,
            bound: f64::INFINITY,
        });
    }
    Ok(v)
}

/// Numerical value of the N-th reflected-wave packet (both η-branches).
pub fn wave_packet(ctx: &ModelContext, n: i64, q: &GreenQuery) -> Result<Complex64> {
    q.validate()?;
    let gamma = q.dyadic_gamma()?;
    let lam = gamma.powf(1.5) / q.h;
    if lam < MIN_LAMBDA_GAMMA {
        return Err(Error::Regime(format!(
            "λ_γ = {lam:.3} < {MIN_LAMBDA_GAMMA}: reflected-wave form not applicable, use the spectral representation"
        )));
    }
    let plus = packet_branch(ctx, q, gamma, n, 1.0)?;
    let minus = packet_branch(ctx, q, gamma, n, -1.0)?;
    Ok(plus + minus)
}

/// Reflection window containing the significant packets: all N with
/// |4N√γ√(1+γ) - t| <= Δ, Δ = max(8√γ, t/2), always including {-1, 0, 1}.
pub fn default_window(t: f64, gamma: f64) -> (i64, i64) {
    let spacing = 4.0 * gamma.sqrt() * (1.0 + gamma).sqrt();
    let delta = (8.0 * gamma.sqrt()).max(t.abs() / 2.0);
    let lo = ((t.abs() - delta) / spacing).floor() as i64;
    let hi = ((t.abs() + delta) / spacing).ceil() as i64;
    (lo.min(-1), hi.max(1))
}

/// Σ_N wave_packet(N) over the window. With `window = None` the default
/// window is used and auto-extended until the edge packets are negligible;
/// an explicit window errors out if its boundary terms are significant.
pub fn sum_reflected(
    ctx: &ModelContext,
    q: &GreenQuery,
    window: Option<(i64, i64)>,
) -> Result<FieldValue> {
    q.validate()?;
    let explicit = window.is_some();
    let (mut lo, mut hi) = window.unwrap_or_else(|| default_window(q.t, q.dyadic_gamma().unwrap()));
    if lo > hi {
        return Err(Error::argument("empty reflection window"));
    }

    let eval_range = |from: i64, to: i64| -> Result<Vec<(i64, Complex64)>> {
        let ns: Vec<i64> = (from..=to).collect();
        let parts: Vec<Result<(i64, Complex64)>> = ns
            .par_iter()
            .map(|&n| wave_packet(ctx, n, q).map(|v| (n, v)))
            .collect();
        parts.into_iter().collect()
    };

    let mut packets = eval_range(lo, hi)?;
    let scale = packets
        .iter()
        .map(|(_, v)| v.norm())
        .fold(0.0f64, f64::max)
        .max(q.tol);
    let edge_limit = (1e-3 * scale).max(4.0 * q.tol);

    if explicit {
        let lo_mag = packets.first().map(|(_, v)| v.norm()).unwrap_or(0.0);
        let hi_mag = packets.last().map(|(_, v)| v.norm()).unwrap_or(0.0);
        if lo_mag > 10.0 * edge_limit || hi_mag > 10.0 * edge_limit {
            return Err(Error::Window(format!(
                "boundary packets |V_{lo}| = {lo_mag:.3e}, |V_{hi}| = {hi_mag:.3e} exceed 10x the interior tolerance"
            )));
        }
    } else {
        // auto-extend while the edges still matter
        for _ in 0..8 {
            let lo_mag = packets.first().map(|(_, v)| v.norm()).unwrap_or(0.0);
            let hi_mag = packets.last().map(|(_, v)| v.norm()).unwrap_or(0.0);
            let mut grew = false;
            if lo_mag > edge_limit {
                lo -= 1;
                let mut add = eval_range(lo, lo)?;
                add.extend(packets);
                packets = add;
                grew = true;
            }
            if hi_mag > edge_limit {
                hi += 1;
                packets.extend(eval_range(hi, hi)?);
                grew = true;
            }
            if !grew {
                break;
            }
        }
    }

    let mut value = Complex64::new(0.0, 0.0);
    for &(_, v) in &packets {
        value += v;
    }
    let edge = packets.first().map(|(_, v)| v.norm()).unwrap_or(0.0)
        + packets.last().map(|(_, v)| v.norm()).unwrap_or(0.0);
    Ok(FieldValue {
        value,
        mode_count: packets.len(),
        error_estimate: q.tol * packets.len() as f64 + edge,
        empty_window: false,
    })
}

/// Registry member: the Poisson-resummed reflected-wave representation.
pub struct ReflectedWaveSum;

impl GreenRep for ReflectedWaveSum {
    fn name(&self) -> &'static str {
        "reflected"
    }
    fn describe(&self) -> &'static str {
        "Poisson-resummed sum over boundary reflections (λ_γ >= 5)"
    }
    fn supports(&self, q: &GreenQuery) -> bool {
        match q.gamma {
            GammaSpec::Dyadic(g) => g.powf(1.5) / q.h >= MIN_LAMBDA_GAMMA,
            GammaSpec::LowFrequency { .. } => false,
        }
    }
    fn evaluate(&self, ctx: &ModelContext, q: &GreenQuery) -> Result<FieldValue> {
        sum_reflected(ctx, q, None)
    }
}
