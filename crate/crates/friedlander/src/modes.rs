//! Gallery-mode eigenfunctions and eigenvalues of -∂²ₓ + (1+x)θ² on the
//! half-line with Dirichlet condition, and the Dirac-mass decomposition.

use crate::error::{Error, Result};
use crate::specfun::{ai_unchecked, AiryTable};
use std::f64::consts::PI;

/// One gallery mode: index, tangential frequency, eigenvalue and normalizer.
#[derive(Debug, Clone, Copy)]
pub struct Eigenmode {
    pub k: usize,
    pub theta: f64,
    /// λ_k(θ) = |θ|² + ω_k |θ|^{4/3}
    pub lambda: f64,
    /// √(2π) |θ|^{1/3} / √(L'(ω_k))
    pub normalizer: f64,
}

fn check_mode_args(table: &AiryTable, k: usize, theta: f64) -> Result<()> {
    if k == 0 || k > table.count() {
        return Err(Error::Argument(format!(
            "mode index {k} outside 1..={}",
            table.count()
        )));
    }
    if theta == 0.0 || !theta.is_finite() {
        return Err(Error::domain(
            "tangential frequency must be nonzero (no compact-resolvent decomposition at θ = 0)",
        ));
    }
    Ok(())
}

/// λ_k(θ) = |θ|² + ω_k |θ|^{4/3}.
pub fn eigenvalue(table: &AiryTable, k: usize, theta: f64) -> Result<f64> {
    check_mode_args(table, k, theta)?;
    let th = theta.abs();
    Ok(th * th + table.zero(k)? * th.powf(4.0 / 3.0))
}

pub fn eigenmode(table: &AiryTable, k: usize, theta: f64) -> Result<Eigenmode> {
    check_mode_args(table, k, theta)?;
    let lambda = eigenvalue(table, k, theta)?;
    let normalizer = (2.0 * PI).sqrt() * theta.abs().powf(1.0 / 3.0)
        / table.lprime_at_zero(k)?.sqrt();
    Ok(Eigenmode {
        k,
        theta,
        lambda,
        normalizer,
    })
}

/// e_k(x, θ) = normalizer · Ai(|θ|^{2/3} x - ω_k), x >= 0.
pub fn eigenfunction(table: &AiryTable, k: usize, theta: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::domain("eigenfunctions live on the half-line x >= 0"));
    }
    let mode = eigenmode(table, k, theta)?;
    Ok(mode.normalizer * ai_unchecked(theta.abs().powf(2.0 / 3.0) * x - table.zero(k)?))
}

/// Adaptive Simpson on [a, b] for a scalar integrand.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth > 40 || (left + right - whole).abs() < 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth + 1)
            + simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth + 1)
    }
}

/// ∫_a^b f dx by adaptive Simpson.
pub(crate) fn quad_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    simpson(&f, a, b, f(a), f(m), f(b), tol, 0)
}

/// Upper integration limit that captures the mode mass: past the turning
/// point x_t = ω_k |θ|^{-2/3} the Airy factor decays superexponentially.
fn mode_span(table: &AiryTable, k: usize, theta: f64) -> f64 {
    let s = theta.abs().powf(-2.0 / 3.0);
    (table.zeros[k - 1] + 12.0) * s
}

/// ∫₀^∞ e_j e_k dx (adaptive quadrature with the analytic tail dropped).
pub fn mode_inner_product(table: &AiryTable, j: usize, k: usize, theta: f64) -> Result<f64> {
    check_mode_args(table, j, theta)?;
    check_mode_args(table, k, theta)?;
    let hi = mode_span(table, j.max(k), theta);
    let mj = eigenmode(table, j, theta)?;
    let mk = eigenmode(table, k, theta)?;
    let s = theta.abs().powf(2.0 / 3.0);
    let zj = table.zero(j)?;
    let zk = table.zero(k)?;
    let f = |x: f64| {
        mj.normalizer * ai_unchecked(s * x - zj) * mk.normalizer * ai_unchecked(s * x - zk)
    };
    Ok(quad_real(f, 0.0, hi, 1e-11))
}

/// ∫ testfn(x) Σ_{k<=K} e_k(x,θ) e_k(x0,θ) dx: the K-term Dirac partial sum
/// applied to a test function supported in (0, ∞).
pub fn dirac_partial_sum<F>(
    table: &AiryTable,
    x0: f64,
    theta: f64,
    kmax: usize,
    testfn: F,
    support: (f64, f64),
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if x0 <= 0.0 {
        return Err(Error::domain("Dirac center must satisfy x0 > 0"));
    }
    if kmax == 0 || kmax > table.count() {
        return Err(Error::Argument(format!(
            "mode truncation {kmax} outside 1..={}",
            table.count()
        )));
    }
    check_mode_args(table, 1, theta)?;
    let s = theta.abs().powf(2.0 / 3.0);
    // cache per-mode data
    let norms: Vec<f64> = (1..=kmax)
        .map(|k| eigenmode(table, k, theta).map(|m| m.normalizer))
        .collect::<Result<_>>()?;
    let at_x0: Vec<f64> = (1..=kmax)
        .map(|k| norms[k - 1] * ai_unchecked(s * x0 - table.zeros[k - 1]))
        .collect();
    let kernel = |x: f64| {
        let mut acc = 0.0;
        for k in 1..=kmax {
            acc += norms[k - 1] * ai_unchecked(s * x - table.zeros[k - 1]) * at_x0[k - 1];
        }
        acc * testfn(x)
    };
    Ok(quad_real(kernel, support.0.max(0.0), support.1, 1e-10))
}

/// Interior zero count of e_k(·, θ) on (0, ω_k |θ|^{-2/3}) by sign changes.
pub fn sturm_zero_count(table: &AiryTable, k: usize, theta: f64) -> Result<usize> {
    check_mode_args(table, k, theta)?;
    let s = theta.abs().powf(2.0 / 3.0);
    let hi = table.zero(k)? / s;
    let n = 400 * k;
    let mut count = 0;
    // skip the boundary zero at x = 0: start just inside, where the sign
    // is set by Ai'(-ω_k)
    let mut prev = ai_unchecked(hi * s / n as f64 - table.zero(k)?);
    for i in 2..n {
        let x = hi * i as f64 / n as f64;
        let v = ai_unchecked(s * x - table.zero(k)?);
        if prev != 0.0 && v != 0.0 && prev.signum() != v.signum() {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    Ok(count)
}
