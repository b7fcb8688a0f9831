//! The spectral phase L(ω) = π + i log(A_-(ω)/A_+(ω)) and its derivative.
//!
//! L is real analytic, strictly increasing, L(0) = π/3, L(ω_k) = 2πk, and
//! for ω >= 1,  L(ω) = (4/3)ω^{3/2} + π/2 - B(ω^{3/2})  with
//! B(u) = b₁/u + O(u^{-3}).
//!
//! Two evaluation routes are provided: `big_l` tracks the phase of A_+
//! continuously along the real axis (the defining construction), while
//! `l_value` resolves the 2π-branch pointwise from the zero count. The two
//! agree to ~1e-10 and cross-validate each other.

use super::airy::{a_plus_unchecked, a_plus_with_deriv};
use super::zeros::AiryTable;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const ASYM_SWITCH: f64 = 9.0;
const NEG_SWITCH: f64 = -7.5;

/// Leading coefficient of B(u) = b₁/u + …  Matches 3·u₁ = 3·(5/72) = 5/24,
/// and the 5/48-term of the standard Airy-zero expansion.
pub const B1: f64 = 5.0 / 24.0;

/// (L, L' - 2√ω) for ω > ASYM_SWITCH from the outgoing-wave expansion
/// A_+(z) = z^{-1/4}/(2√π) e^{i(ζ-π/4)} Σ (-i)^j u_j ζ^{-j},  ζ = (2/3)z^{3/2}.
fn l_asymptotic(omega: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * omega.powf(1.5);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut u = 1.0;
    let mut pow = Complex64::new(1.0, 0.0);
    let step = Complex64::new(0.0, -1.0 / zeta);
    for j in 1..30 {
        u = u * (6.0 * j as f64 - 5.0) * (6.0 * j as f64 - 1.0) / (72.0 * j as f64);
        pow *= step;
        let term = pow * u;
        sum += term;
        dsum += term * (-(j as f64) / zeta);
        if term.norm() < 1e-18 {
            break;
        }
    }
    let l = 4.0 / 3.0 * omega.powf(1.5) + PI / 2.0 + 2.0 * sum.im.atan2(sum.re);
    // L'(ω) = 2√ω + 2 Im[(dΣ/dζ)·ζ'/Σ],  ζ' = √ω
    let corr = 2.0 * (dsum * omega.sqrt() / sum).im;
    (l, corr)
}

/// Branch-resolved L(ω) for the mid-range (the reference evaluation).
pub(crate) fn l_value_exact(table: &AiryTable, omega: f64) -> f64 {
    debug_assert!(table.max_zero() > ASYM_SWITCH, "table too small for branch count");
    let a = a_plus_unchecked(omega);
    let principal = PI + 2.0 * a.im.atan2(a.re);
    // L lies in [2πk, 2π(k+1)) between consecutive zeros and is congruent
    // to the principal value mod 4π; the window is shorter than the
    // period, so the shift is unique.
    let k = table.zeros_below(omega) as f64;
    let center = 2.0 * PI * k + PI;
    let m = ((center - principal) / (4.0 * PI)).round();
    principal + 4.0 * PI * m
}

fn l_prime_exact(omega: f64) -> f64 {
    let (a, ap) = a_plus_with_deriv(omega);
    2.0 * (ap / a).im
}

/// Clenshaw evaluation of a Chebyshev series on [lo, hi].
#[inline]
fn clenshaw(coef: &[f64], lo: f64, hi: f64, x: f64) -> f64 {
    let u = (2.0 * x - lo - hi) / (hi - lo);
    let u2 = 2.0 * u;
    let (mut b1, mut b2) = (0.0f64, 0.0f64);
    for &c in coef.iter().skip(1).rev() {
        let b0 = c + u2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coef[0] + u * b1 - b2
}

const CHEB_N: usize = 128;

/// Fit Chebyshev interpolants of L and L' on [NEG_SWITCH, ASYM_SWITCH]
/// from the branch-resolved reference evaluations.
pub(crate) fn fit_phase_interpolants(table: &AiryTable) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = (NEG_SWITCH, ASYM_SWITCH);
    let nodes: Vec<f64> = (0..CHEB_N)
        .map(|j| {
            let u = (PI * (j as f64 + 0.5) / CHEB_N as f64).cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * u
        })
        .collect();
    let fl: Vec<f64> = nodes.iter().map(|&w| l_value_exact(table, w)).collect();
    let flp: Vec<f64> = nodes.iter().map(|&w| l_prime_exact(w)).collect();
    let fit = |f: &[f64]| -> Vec<f64> {
        (0..CHEB_N)
            .map(|m| {
                let s: f64 = (0..CHEB_N)
                    .map(|j| f[j] * (PI * m as f64 * (j as f64 + 0.5) / CHEB_N as f64).cos())
                    .sum();
                s * if m == 0 { 1.0 } else { 2.0 } / CHEB_N as f64
            })
            .collect()
    };
    (fit(&fl), fit(&flp))
}

/// Pointwise L(ω): asymptotic branch for large ω, Chebyshev-accelerated
/// branch-resolved value in the middle, exponentially small tail for ω << 0.
pub fn l_value(table: &AiryTable, omega: f64) -> f64 {
    if omega > ASYM_SWITCH {
        l_asymptotic(omega).0
    } else if omega < NEG_SWITCH {
        (-(4.0 / 3.0) * (-omega).powf(1.5)).exp()
    } else if table.cheb_l.len() == CHEB_N {
        clenshaw(&table.cheb_l, NEG_SWITCH, ASYM_SWITCH, omega)
    } else {
        l_value_exact(table, omega)
    }
}

/// L'(ω) = 2 Im[A_+'/A_+].
pub fn l_prime(table: &AiryTable, omega: f64) -> f64 {
    if omega > ASYM_SWITCH {
        2.0 * omega.sqrt() + l_asymptotic(omega).1
    } else if omega < NEG_SWITCH {
        2.0 * (-omega).sqrt() * (-(4.0 / 3.0) * (-omega).powf(1.5)).exp()
    } else if table.cheb_lp.len() == CHEB_N {
        clenshaw(&table.cheb_lp, NEG_SWITCH, ASYM_SWITCH, omega)
    } else {
        l_prime_exact(omega)
    }
}

/// L'(ω) - 2√max(ω,0), computed without cancellation in the far regime.
fn l_prime_correction(table: &AiryTable, omega: f64) -> f64 {
    if omega > ASYM_SWITCH {
        l_asymptotic(omega).1
    } else {
        l_prime(table, omega) - 2.0 * omega.sqrt().max(0.0)
    }
}

/// L(ω) by continuous phase tracking of A_+ from ω = 0 (branch fixed by
/// L(0) = π/3). Adaptive steps keep |Δarg A_+| < π/4.
pub fn big_l(omega: f64) -> Result<f64> {
    if !omega.is_finite() {
        return Err(Error::domain(format!("non-finite argument {omega}")));
    }
    if omega < NEG_SWITCH {
        return Ok((-(4.0 / 3.0) * (-omega).powf(1.5)).exp());
    }
    let mut pos = 0.0f64;
    let mut val = a_plus_unchecked(0.0);
    let mut theta = val.im.atan2(val.re); // = -π/3
    let dir = if omega >= 0.0 { 1.0 } else { -1.0 };
    let mut guard = 0usize;
    while (omega - pos) * dir > 0.0 {
        // local step bound from dθ/dω = L'/2 ~ √(|ω|+1)
        let mut step = dir * (0.25 * PI) / (2.0 * (pos.abs() + 1.0).sqrt()) * 0.8;
        if (pos + step - omega) * dir > 0.0 {
            step = omega - pos;
        }
        let mut halvings = 0;
        loop {
            let next = a_plus_unchecked(pos + step);
            let delta = (next / val).im.atan2((next / val).re);
            if delta.abs() < 0.25 * PI {
                pos += step;
                val = next;
                theta += delta;
                break;
            }
            step *= 0.5;
            halvings += 1;
            if halvings > 48 {
                return Err(Error::Internal(format!(
                    "phase tracking lost continuity near ω = {pos}; refine the step bound"
                )));
            }
        }
        guard += 1;
        if guard > 2_000_000 {
            return Err(Error::Internal("phase tracking did not terminate".into()));
        }
    }
    Ok(PI + 2.0 * theta)
}

/// B(u) = (4/3)u + π/2 - L(u^{2/3}), valid on u > 0 through the exact L.
pub fn b_phase(table: &AiryTable, u: f64) -> f64 {
    4.0 / 3.0 * u + PI / 2.0 - l_value(table, u.powf(2.0 / 3.0))
}

/// B'(u) = 4/3 - (2/3) u^{-1/3} L'(u^{2/3}), assembled cancellation-free:
/// the 2√ω part of L' cancels the 4/3 exactly.
pub fn b_phase_deriv(table: &AiryTable, u: f64) -> f64 {
    let omega = u.powf(2.0 / 3.0);
    -(2.0 / 3.0) * u.powf(-1.0 / 3.0) * l_prime_correction(table, omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> AiryTable {
        AiryTable::new(32).unwrap()
    }

    // mpmath tracked references
    const L_REFS: &[(f64, f64)] = &[
        (1.0, 2.7579984301351956265),
        (5.0, 16.459445301776444413),
        (10.0, 43.727917914673108975),
        (30.0, 220.65855150660781575),
    ];

    #[test]
    fn l_value_matches_reference() {
        let t = table();
        assert!((l_value(&t, 0.0) - PI / 3.0).abs() < 1e-12);
        for &(om, want) in L_REFS {
            let got = l_value(&t, om);
            assert!((got - want).abs() < 1e-9, "L({om}) = {got}, want {want}");
        }
    }

    #[test]
    fn big_l_tracking_matches_pointwise() {
        let t = table();
        for &om in &[-8.0, -2.0, 0.0, 0.7, 2.3381, 5.0, 12.0, 27.5] {
            let a = big_l(om).unwrap();
            let b = l_value(&t, om);
            assert!((a - b).abs() < 1e-9, "tracked {a} vs pointwise {b} at {om}");
        }
    }

    #[test]
    fn l_at_zero_and_far_left() {
        assert!((big_l(0.0).unwrap() - PI / 3.0).abs() < 1e-10);
        assert!(big_l(-20.0).unwrap().abs() < 1e-6);
    }

    #[test]
    fn l_at_airy_zeros_is_2_pi_k() {
        let t = table();
        for k in 1..=20usize {
            let w = t.zero(k).unwrap();
            let got = l_value(&t, w);
            assert!(
                (got - 2.0 * PI * k as f64).abs() < 1e-8,
                "L(omega_{k}) = {got}"
            );
        }
    }

    #[test]
    fn l_monotone_on_grid() {
        let t = table();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=1000 {
            let om = -10.0 + 40.0 * i as f64 / 1000.0;
            let v = l_value(&t, om);
            assert!(v > prev, "monotonicity fails at ω = {om}");
            prev = v;
        }
    }

    #[test]
    fn l_prime_matches_finite_difference() {
        let t = table();
        for &om in &[0.5, 2.0, 5.0, 8.0, 15.0, 40.0] {
            let h = 1e-5;
            let fd = (l_value(&t, om + h) - l_value(&t, om - h)) / (2.0 * h);
            let got = l_prime(&t, om);
            assert!(
                (got - fd).abs() < 1e-5 * got.abs(),
                "L'({om}) = {got}, fd {fd}"
            );
        }
    }

    #[test]
    fn l_prime_at_zero_identity_vs_direct() {
        let t = table();
        for k in [1usize, 3, 10, 25] {
            let w = t.zero(k).unwrap();
            let identity = t.lprime_at_zero(k).unwrap();
            let direct = l_prime(&t, w);
            assert!(
                (identity - direct).abs() < 1e-8 * identity,
                "k={k}: 2πAi'^2 = {identity}, L'(ω_k) = {direct}"
            );
        }
    }

    #[test]
    fn remainder_slope_at_least_cubic() {
        // |L - (4/3)ω^{3/2} - π/2 + B1 ω^{-3/2}| decays at least like ω^{-3}
        let t = table();
        let rem = |om: f64| {
            (l_value(&t, om) - (4.0 / 3.0 * om.powf(1.5) + PI / 2.0 - B1 * om.powf(-1.5))).abs()
        };
        let (r5, r30) = (rem(5.0), rem(30.0));
        let slope = (r30.ln() - r5.ln()) / (30f64.ln() - 5f64.ln());
        assert!(slope <= -3.0, "remainder log-log slope {slope} > -3");
    }

    #[test]
    fn b_phase_small_and_matching_series() {
        let t = table();
        for &u in &[20.0, 100.0, 1000.0] {
            let b = b_phase(&t, u);
            assert!(
                (b - B1 / u).abs() < 0.3 * B1 / u / u.powf(0.5),
                "B({u}) = {b}, leading {}",
                B1 / u
            );
        }
    }

    #[test]
    fn b_phase_deriv_matches_finite_difference() {
        let t = table();
        for &u in &[5.0, 40.0, 400.0] {
            let h = u * 1e-6;
            let fd = (b_phase(&t, u + h) - b_phase(&t, u - h)) / (2.0 * h);
            let got = b_phase_deriv(&t, u);
            assert!(
                (got - fd).abs() < 1e-4 * got.abs().max(1e-12) + 1e-11,
                "B'({u}) = {got:e}, fd {fd:e}"
            );
        }
    }

    #[test]
    fn chebyshev_matches_branch_resolved_reference() {
        let t = table();
        let mut worst: f64 = 0.0;
        for i in 0..=600 {
            let om = -7.5 + 16.5 * i as f64 / 600.0;
            worst = worst.max((l_value(&t, om) - l_value_exact(&t, om)).abs());
        }
        assert!(worst < 1e-10, "Chebyshev L error {worst:e}");
    }

    #[test]
    fn tracking_continuity_small_steps_near_deep_negative() {
        // crossing the growth region must not lose the branch
        let v = big_l(-8.5).unwrap();
        assert!(v > 0.0 && v < 1e-13);
    }
}
