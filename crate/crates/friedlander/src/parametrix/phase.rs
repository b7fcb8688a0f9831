//! The rescaled reflected-wave phase Ψ^m_{N,a,γ,h} and its exact gradient.
//!
//! In the rescaled variables x = γX, α = γA, t = √γ T, s = √γ S, σ = √γ Υ,
//! y + t√(1+γ) = γ^{3/2} Y the single-reflection phase reads
//!
//! Ψ = η(Y + Υ³/3 + Υ(X-A) + S³/3 + S(a/γ-A)
//!       + T(√(1+γA+m²h²/η²) - √(1+γ))/γ - (4/3)N A^{3/2})
//!     + (N/λ_γ)(B(ηλ_γA^{3/2}) - π/2),        λ_γ = γ^{3/2}/h,
//!
//! and satisfies exactly γ^{3/2}Ψ(T,X,Y,·) = Φ_N(√γT, γX, γ^{3/2}Y - √γ√(1+γ)T, ·)
//! for the unscaled phase Φ_N built on L. (The constant -Nπ/(2λ_γ) comes from
//! L(ω) = (4/3)ω^{3/2} + π/2 - B(ω^{3/2}); it shifts no critical point.)

use crate::error::{Error, Result};
use crate::specfun::{b_phase, b_phase_deriv, l_value};
use crate::ModelContext;

/// A point of the rescaled phase space.
#[derive(Debug, Clone, Copy)]
pub struct PhasePoint {
    /// reflection count N
    pub n: i64,
    /// rescaled time T
    pub t: f64,
    /// rescaled height X
    pub x: f64,
    /// rescaled tangential offset Y
    pub y: f64,
    /// integration variables (Υ, S, A, η)
    pub upsilon: f64,
    pub s: f64,
    pub a: f64,
    pub eta: f64,
}

/// Fixed parameters of the phase family.
#[derive(Debug, Clone, Copy)]
pub struct PhaseParams {
    pub mass: u8,
    pub gamma: f64,
    pub h: f64,
    /// source height in units of γ (a/γ)
    pub a_over_gamma: f64,
}

impl PhaseParams {
    pub fn lambda_gamma(&self) -> f64 {
        self.gamma.powf(1.5) / self.h
    }
}

/// Phase value and exact analytic gradient in (Υ, S, A, η).
pub fn phase_psi(ctx: &ModelContext, p: &PhasePoint, prm: &PhaseParams) -> Result<(f64, [f64; 4])> {
    if p.a <= 0.0 {
        return Err(Error::domain("phase point requires A > 0"));
    }
    if p.eta <= 0.0 {
        return Err(Error::domain("phase point requires η > 0 (ψ₁-support)"));
    }
    let m2 = (prm.mass as f64) * (prm.mass as f64);
    let (gamma, h) = (prm.gamma, prm.h);
    let lam = prm.lambda_gamma();
    let nn = p.n as f64;
    let (t, x, y) = (p.t, p.x, p.y);
    let (up, s, a, eta) = (p.upsilon, p.s, p.a, p.eta);
    let aog = prm.a_over_gamma;

    let mh2 = m2 * h * h / (eta * eta);
    let root = (1.0 + gamma * a + mh2).sqrt();
    let root1 = (1.0 + gamma).sqrt();
    let u = eta * lam * a.powf(1.5);
    let b = b_phase(&ctx.airy, u);
    let bp = b_phase_deriv(&ctx.airy, u);

    let cubics = up * up * up / 3.0 + up * (x - a) + s * s * s / 3.0 + s * (aog - a);
    let bracket = y + cubics + t * (root - root1) / gamma - 4.0 / 3.0 * nn * a.powf(1.5);
    let value = eta * bracket + nn / lam * (b - std::f64::consts::FRAC_PI_2);

    let d_up = eta * (up * up + x - a);
    let d_s = eta * (s * s + aog - a);
    let d_a = eta
        * (-(up + s) + t / (2.0 * root) - 2.0 * nn * a.sqrt() * (1.0 - 0.75 * bp));
    let d_eta = y + cubics + t * (root - root1) / gamma - t * mh2 / (gamma * root)
        - 4.0 / 3.0 * nn * a.powf(1.5)
        + nn * a.powf(1.5) * bp;

    Ok((value, [d_up, d_s, d_a, d_eta]))
}

/// Residual of the N-free relation obtained by eliminating the reflection
/// count between the A- and η-criticality equations; vanishes identically
/// on critical points. (For m = 0 this is the displayed Y-T relation; for
/// m = 1 the exact elimination keeps an extra √(1+γ) factor in the mass
/// term.)
pub fn critical_yt_residual(p: &PhasePoint, prm: &PhaseParams) -> f64 {
    let m2 = (prm.mass as f64) * (prm.mass as f64);
    let (gamma, h) = (prm.gamma, prm.h);
    let (t, x, y) = (p.t, p.x, p.y);
    let (up, s, a, eta) = (p.upsilon, p.s, p.a, p.eta);
    let aog = prm.a_over_gamma;
    let mh2 = m2 * h * h / (eta * eta);
    let root = (1.0 + gamma * a + mh2).sqrt();
    let root1 = (1.0 + gamma).sqrt();
    let cubics = up * up * up / 3.0 + up * (x - a) + s * s * s / 3.0 + s * (aog - a);
    y + cubics + t * (root - root1) / gamma - t * mh2 / (gamma * root)
        - 2.0 / 3.0 * a * (t / (2.0 * root) - (up + s))
}

/// The unscaled four-fold phase Φ_N of the reflected-wave integral,
/// Φ = yη + η(σ³/3 + σ(x-α) + s³/3 + s(a-α) - N(h/η)L(η^{2/3}α/h^{2/3})
///       + t√(1+α+m²h²/η²)),   η > 0.
#[allow(clippy::too_many_arguments)]
pub fn phase_unscaled(
    ctx: &ModelContext,
    mass: u8,
    h: f64,
    a: f64,
    n: i64,
    t: f64,
    x: f64,
    y: f64,
    sigma: f64,
    s: f64,
    alpha: f64,
    eta: f64,
) -> f64 {
    let m2 = (mass as f64) * (mass as f64);
    let omega = (eta / h).powf(2.0 / 3.0) * alpha;
    y * eta
        + eta
            * (sigma * sigma * sigma / 3.0 + sigma * (x - alpha)
                + s * s * s / 3.0
                + s * (a - alpha)
                - (n as f64) * (h / eta) * l_value(&ctx.airy, omega)
                + t * (1.0 + alpha + m2 * h * h / (eta * eta)).sqrt())
}
