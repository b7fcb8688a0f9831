//! Oscillatory-integral engine: phase-derivative-aware panel subdivision,
//! adaptive error control on Gauss-Legendre panels, stationary-point
//! location and classification, and power-law decay probing.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// 15-point Gauss-Legendre rule on [-1, 1].
const GL15: [(f64, f64); 15] = [
    (-9.87992518020485377e-1, 3.07532419961186465e-2),
    (-9.37273392400705951e-1, 7.03660474881080689e-2),
    (-8.48206583410427206e-1, 1.07159220467171773e-1),
    (-7.24417731360170070e-1, 1.39570677926153908e-1),
    (-5.70972172608538830e-1, 1.66269205816993781e-1),
    (-3.94151347077563385e-1, 1.86161000015561878e-1),
    (-2.01194093997434514e-1, 1.98431485327111246e-1),
    (0.0, 2.02578241925560898e-1),
    (2.01194093997434514e-1, 1.98431485327111246e-1),
    (3.94151347077563385e-1, 1.86161000015561878e-1),
    (5.70972172608538830e-1, 1.66269205816993781e-1),
    (7.24417731360170070e-1, 1.39570677926153908e-1),
    (8.48206583410427206e-1, 1.07159220467171773e-1),
    (9.37273392400705951e-1, 7.03660474881080689e-2),
    (9.87992518020485377e-1, 3.07532419961186465e-2),
];

/// A 1D oscillatory integrand ∫ amplitude(s) e^{i phase(s)} ds.
///
/// `large_parameter` is informational (scales of the problem); the phase
/// callbacks carry the full phase including any large factor.
pub struct PhaseSpec<'a> {
    pub phase: &'a (dyn Fn(f64) -> f64 + Sync),
    pub dphase: &'a (dyn Fn(f64) -> f64 + Sync),
    pub d2phase: &'a (dyn Fn(f64) -> f64 + Sync),
    pub amplitude: &'a (dyn Fn(f64) -> Complex64 + Sync),
    pub interval: (f64, f64),
    pub large_parameter: f64,
}

impl<'a> PhaseSpec<'a> {
    /// Check the derivative callbacks against central finite differences
    /// (relative tolerance 1e-6 away from zeros). Returns the worst
    /// relative mismatch of the first derivative over `n` interior points.
    pub fn gradient_check(&self, n: usize) -> f64 {
        let (lo, hi) = self.interval;
        let h = (hi - lo) * 1e-7;
        let mut worst: f64 = 0.0;
        for i in 1..n {
            let s = lo + (hi - lo) * i as f64 / n as f64;
            let fd = ((self.phase)(s + h) - (self.phase)(s - h)) / (2.0 * h);
            let an = (self.dphase)(s);
            let scale = an.abs().max(fd.abs()).max(1e-8);
            worst = worst.max((an - fd).abs() / scale);
        }
        worst
    }
}

fn gl15_panel(spec: &PhaseSpec, a: f64, b: f64) -> Complex64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in GL15.iter() {
        let s = c + r * x;
        let amp = (spec.amplitude)(s);
        if amp.re == 0.0 && amp.im == 0.0 {
            continue;
        }
        let ph = (spec.phase)(s);
        acc += amp * Complex64::from_polar(1.0, ph) * w;
    }
    acc * r
}

struct QuadState {
    value: Complex64,
    err: f64,
    fail: bool,
}

fn adapt(spec: &PhaseSpec, a: f64, b: f64, whole: Complex64, tol: f64, depth: u32, st: &mut QuadState) {
    let m = 0.5 * (a + b);
    let left = gl15_panel(spec, a, m);
    let right = gl15_panel(spec, m, b);
    let refined = left + right;
    let err = (whole - refined).norm();
    if err <= tol || depth >= 24 {
        st.value += refined;
        st.err += err;
        if depth >= 24 && err > tol {
            st.fail = true;
        }
        return;
    }
    adapt(spec, a, m, left, 0.5 * tol, depth + 1, st);
    adapt(spec, m, b, right, 0.5 * tol, depth + 1, st);
}

/// Deterministic composite Gauss-Legendre integration on phase-aware
/// panels: the interval is split so each panel carries at most ~π/2 of
/// phase (plus `extra_osc` radians of amplitude-borne oscillation spread
/// uniformly). No error estimation: the result is a smooth function of
/// the spec inputs, which makes it safe to nest inside an adaptive
/// integral. With <= π/2 phase per panel the GL15 truncation error is far
/// below 1e-12 of the panel magnitude.
pub fn integrate_fixed(spec: &PhaseSpec, extra_osc: f64) -> Complex64 {
    let (lo, hi) = spec.interval;
    let width = hi - lo;
    const CELLS: usize = 8;
    let mut acc = Complex64::new(0.0, 0.0);
    for c in 0..CELLS {
        let ca = lo + width * c as f64 / CELLS as f64;
        let cb = lo + width * (c + 1) as f64 / CELLS as f64;
        let mut dmax = 0.0f64;
        for i in 0..=4 {
            dmax = dmax.max((spec.dphase)(ca + (cb - ca) * i as f64 / 4.0).abs());
        }
        // GL15 keeps machine accuracy up to ~2.3π of phase per panel:
        // the worst-panel error behaves like (phase/2)^{30}/30!
        let osc = dmax * (cb - ca) + extra_osc / CELLS as f64;
        let panels = ((osc / (1.8 * std::f64::consts::PI)).ceil() as usize).max(2);
        for p in 0..panels {
            let pa = ca + (cb - ca) * p as f64 / panels as f64;
            let pb = ca + (cb - ca) * (p + 1) as f64 / panels as f64;
            acc += gl15_panel(spec, pa, pb);
        }
    }
    acc
}

/// Split [a, b] so that |phase'|·width <= π/2 on every initial panel
/// (sampled at five points), then integrate each panel adaptively.
pub fn integrate_oscillatory(spec: &PhaseSpec, tol: f64) -> Result<Complex64> {
    if tol <= 0.0 {
        return Err(Error::argument("tolerance must be positive"));
    }
    let (lo, hi) = spec.interval;
    if !(hi > lo) {
        return Err(Error::argument("empty integration interval"));
    }
    let mut panels: Vec<(f64, f64)> = Vec::new();
    let min_w = (hi - lo) * 2f64.powi(-22);
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let w = b - a;
        let dmax = (0..=4)
            .map(|i| ((spec.dphase)(a + w * i as f64 / 4.0)).abs())
            .fold(0.0f64, f64::max);
        if dmax * w > 1.5 * std::f64::consts::PI && w > min_w {
            let m = 0.5 * (a + b);
            stack.push((m, b));
            stack.push((a, m));
        } else {
            panels.push((a, b));
        }
    }
    panels.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    let mut st = QuadState {
        value: Complex64::new(0.0, 0.0),
        err: 0.0,
        fail: false,
    };
    let per_panel = tol / panels.len() as f64;
    for &(a, b) in &panels {
        let whole = gl15_panel(spec, a, b);
        adapt(spec, a, b, whole, per_panel, 0, &mut st);
    }
    if st.fail || st.err > 4.0 * tol {
        return Err(Error::Accuracy {
            context: "oscillatory quadrature did not converge".into(),
            best: st.value,
            bound: st.err,
        });
    }
    Ok(st.value)
}

/// A critical point of the phase: location and order (1 = nondegenerate,
/// 2 = degenerate with vanishing second derivative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub location: f64,
    pub order: usize,
}

/// All roots of phase' in the interval. Simple sign-change roots are
/// bisected and polished; even-order roots (phase' touching zero) are found
/// as interior minima of |phase'| below 1e-8 of its scale. Orders are
/// classified by |phase''| < 1e-6 · max|phase''|.
pub fn stationary_points(spec: &PhaseSpec) -> Vec<StationaryPoint> {
    const N: usize = 1200;
    let (lo, hi) = spec.interval;
    let step = (hi - lo) / N as f64;
    let dp: Vec<f64> = (0..=N).map(|i| (spec.dphase)(lo + step * i as f64)).collect();
    let scale = dp.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale < 1e-14 {
        return Vec::new(); // flat phase: no isolated critical points
    }
    let d2max = (0..=N)
        .map(|i| ((spec.d2phase)(lo + step * i as f64)).abs())
        .fold(0.0f64, f64::max);

    let mut roots: Vec<f64> = Vec::new();
    for i in 0..N {
        let (a, b) = (lo + step * i as f64, lo + step * (i + 1) as f64);
        if dp[i] == 0.0 {
            roots.push(a);
            continue;
        }
        if dp[i] * dp[i + 1] < 0.0 {
            let (mut xa, mut xb, mut fa) = (a, b, dp[i]);
            for _ in 0..80 {
                let m = 0.5 * (xa + xb);
                let fm = (spec.dphase)(m);
                if fa * fm <= 0.0 {
                    xb = m;
                } else {
                    xa = m;
                    fa = fm;
                }
            }
            roots.push(0.5 * (xa + xb));
        }
    }
    // even-order roots: interior minima of |phase'| that reach ~0
    for i in 1..N {
        if dp[i].abs() < dp[i - 1].abs() && dp[i].abs() < dp[i + 1].abs() {
            let (mut xa, mut xb) = (lo + step * (i - 1) as f64, lo + step * (i + 1) as f64);
            // golden-section on |phase'|
            let gr = 0.5 * (3.0 - 5f64.sqrt());
            let mut x1 = xa + gr * (xb - xa);
            let mut x2 = xb - gr * (xb - xa);
            let mut f1 = (spec.dphase)(x1).abs();
            let mut f2 = (spec.dphase)(x2).abs();
            for _ in 0..120 {
                if f1 < f2 {
                    xb = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = xa + gr * (xb - xa);
                    f1 = (spec.dphase)(x1).abs();
                } else {
                    xa = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = xb - gr * (xb - xa);
                    f2 = (spec.dphase)(x2).abs();
                }
            }
            let x = 0.5 * (xa + xb);
            if (spec.dphase)(x).abs() < 1e-8 * scale
                && roots.iter().all(|&r| (r - x).abs() > 4.0 * step)
            {
                roots.push(x);
            }
        }
    }
    roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * (hi - lo));

    roots
        .into_iter()
        .map(|r| {
            let d2 = (spec.d2phase)(r).abs();
            let order = if d2 < 1e-6 * d2max.max(1e-300) { 2 } else { 1 };
            StationaryPoint { location: r, order }
        })
        .collect()
}

/// Result of a power-law decay fit of |value(t)| ~ t^{-exponent}.
#[derive(Debug, Clone, Copy)]
pub struct DecayFit {
    pub exponent: f64,
    pub residual: f64,
    pub underflow: bool,
}

/// Least-squares slope of log|value| against log t over a geometric t-list.
pub fn decay_probe<F>(mut eval: F, t_list: &[f64]) -> Result<DecayFit>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if t_list.len() < 6 {
        return Err(Error::argument("decay probe needs at least 6 time samples"));
    }
    let r0 = t_list[1] / t_list[0];
    for w in t_list.windows(2) {
        let r = w[1] / w[0];
        if !(r > 1.0) || (r / r0 - 1.0).abs() > 0.05 {
            return Err(Error::argument("decay probe requires a geometric t grid"));
        }
    }
    let mut underflow = false;
    let mut pts = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let v = eval(t)?.norm();
        if v < 1e-14 {
            underflow = true;
            continue;
        }
        pts.push((t.ln(), v.ln()));
    }
    if pts.len() < 3 {
        return Err(Error::Accuracy {
            context: "too many underflowed samples in decay probe".into(),
            best: Complex64::new(0.0, 0.0),
            bound: f64::INFINITY,
        });
    }
    let (slope, _icept, residual) = linear_fit(&pts);
    Ok(DecayFit {
        exponent: -slope,
        residual,
        underflow,
    })
}

/// Ordinary least squares on (x, y): returns (slope, intercept, rms residual).
pub fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return (0.0, sy / n, 0.0);
    }
    let slope = (n * sxy - sx * sy) / denom;
    let icept = (sy - slope * sx) / n;
    let rms = (pts
        .iter()
        .map(|&(x, y)| {
            let r = y - slope * x - icept;
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    (slope, icept, rms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoff::test_bump;
    use crate::specfun::ai;
    use std::f64::consts::PI;

    fn zero() -> impl Fn(f64) -> f64 + Sync {
        |_s: f64| 0.0
    }

    #[test]
    fn zero_phase_is_plain_integral() {
        let bump = test_bump(0.0, 1.0);
        let amp = move |s: f64| Complex64::new(bump(s), 0.0);
        let p = zero();
        let dp = zero();
        let d2p = zero();
        let spec = PhaseSpec {
            phase: &p,
            dphase: &dp,
            d2phase: &d2p,
            amplitude: &amp,
            interval: (-1.5, 1.5),
            large_parameter: 1.0,
        };
        let v = integrate_oscillatory(&spec, 1e-12).unwrap();
        // reference: very fine trapezoid of the same bump
        let n = 200_000;
        let mut acc = 0.0;
        for i in 0..=n {
            let s = -1.5 + 3.0 * i as f64 / n as f64;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += w * bump(s);
        }
        acc *= 3.0 / n as f64;
        assert!((v.re - acc).abs() < 1e-9, "{} vs {acc}", v.re);
        assert!(v.im.abs() < 1e-12);
    }

    /// ∫ e^{iλ(s³/3 + s w)} ds over a wide bump = (2π/λ^{1/3}) Ai(λ^{2/3} w)
    fn airy_identity_case(lambda: f64, w: f64) -> (Complex64, f64) {
        let bump = test_bump(0.0, 8.0); // plateau [-4, 4]
        let amp = move |s: f64| Complex64::new(bump(s), 0.0);
        let p = move |s: f64| lambda * (s * s * s / 3.0 + s * w);
        let dp = move |s: f64| lambda * (s * s + w);
        let d2p = move |s: f64| lambda * 2.0 * s;
        let spec = PhaseSpec {
            phase: &p,
            dphase: &dp,
            d2phase: &d2p,
            amplitude: &amp,
            interval: (-8.0, 8.0),
            large_parameter: lambda,
        };
        let got = integrate_oscillatory(&spec, 1e-9).unwrap();
        let want = 2.0 * PI / lambda.powf(1.0 / 3.0) * ai(lambda.powf(2.0 / 3.0) * w).unwrap();
        (got, want)
    }

    #[test]
    fn cubic_phase_reproduces_airy() {
        let (got, want) = airy_identity_case(50.0, 1.0);
        assert!((got.re - want).abs() < 1e-6 && got.im.abs() < 1e-6);
        // oscillatory side: w < 0 has two real stationary points
        let (got_n, want_n) = airy_identity_case(50.0, -1.0);
        assert!(
            (got_n.re - want_n).abs() < 1e-6,
            "re {} vs {want_n}",
            got_n.re
        );
        assert!(got_n.im.abs() < 1e-6);
    }

    #[test]
    fn cubic_phase_at_airy_zero() {
        let lambda: f64 = 50.0;
        let omega1 = 2.3381074104597670385;
        let w = -omega1 / lambda.powf(2.0 / 3.0);
        let (got, _) = airy_identity_case(lambda, w);
        assert!(
            got.norm() < 1e-6 * 2.0 * PI / lambda.powf(1.0 / 3.0),
            "|I| = {}",
            got.norm()
        );
    }

    #[test]
    fn stationary_points_classification() {
        // s³/3 + s: no real critical point
        let p1 = |s: f64| s * s * s / 3.0 + s;
        let dp1 = |s: f64| s * s + 1.0;
        let d2p1 = |s: f64| 2.0 * s;
        let amp = |_s: f64| Complex64::new(1.0, 0.0);
        let spec = PhaseSpec {
            phase: &p1,
            dphase: &dp1,
            d2phase: &d2p1,
            amplitude: &amp,
            interval: (-3.0, 3.0),
            large_parameter: 1.0,
        };
        assert!(stationary_points(&spec).is_empty());

        // s³/3 - s: two order-1 points at ±1
        let p2 = |s: f64| s * s * s / 3.0 - s;
        let dp2 = |s: f64| s * s - 1.0;
        let d2p2 = |s: f64| 2.0 * s;
        let spec2 = PhaseSpec {
            phase: &p2,
            dphase: &dp2,
            d2phase: &d2p2,
            amplitude: &amp,
            interval: (-3.0, 3.0),
            large_parameter: 1.0,
        };
        let pts = stationary_points(&spec2);
        assert_eq!(pts.len(), 2);
        assert!((pts[0].location + 1.0).abs() < 1e-8 && pts[0].order == 1);
        assert!((pts[1].location - 1.0).abs() < 1e-8 && pts[1].order == 1);

        // s³/3: order-2 point at 0 (phase' touches zero)
        let p3 = |s: f64| s * s * s / 3.0;
        let dp3 = |s: f64| s * s;
        let d2p3 = |s: f64| 2.0 * s;
        let spec3 = PhaseSpec {
            phase: &p3,
            dphase: &dp3,
            d2phase: &d2p3,
            amplitude: &amp,
            interval: (-3.0, 3.0),
            large_parameter: 1.0,
        };
        let pts = stationary_points(&spec3);
        assert_eq!(pts.len(), 1);
        assert!(pts[0].location.abs() < 1e-6);
        assert_eq!(pts[0].order, 2);
    }

    #[test]
    fn decay_probe_orders() {
        let bump = test_bump(0.0, 2.0);
        let t_list: Vec<f64> = (0..8).map(|i| 50.0 * 2f64.powi(i)).collect();

        // nondegenerate: phase t·s²/2 → t^{-1/2}
        let fit = decay_probe(
            |t| {
                let amp = move |s: f64| Complex64::new(bump(s), 0.0);
                let p = move |s: f64| t * s * s / 2.0;
                let dp = move |s: f64| t * s;
                let d2p = move |_s: f64| t;
                integrate_oscillatory(
                    &PhaseSpec {
                        phase: &p,
                        dphase: &dp,
                        d2phase: &d2p,
                        amplitude: &amp,
                        interval: (-2.0, 2.0),
                        large_parameter: t,
                    },
                    1e-10,
                )
            },
            &t_list,
        )
        .unwrap();
        assert!(
            (fit.exponent - 0.5).abs() < 0.05,
            "order-1 exponent {}",
            fit.exponent
        );

        // degenerate order 2: phase t·s³/3 → t^{-1/3}
        let fit = decay_probe(
            |t| {
                let amp = move |s: f64| Complex64::new(bump(s), 0.0);
                let p = move |s: f64| t * s * s * s / 3.0;
                let dp = move |s: f64| t * s * s;
                let d2p = move |s: f64| 2.0 * t * s;
                integrate_oscillatory(
                    &PhaseSpec {
                        phase: &p,
                        dphase: &dp,
                        d2phase: &d2p,
                        amplitude: &amp,
                        interval: (-2.0, 2.0),
                        large_parameter: t,
                    },
                    1e-10,
                )
            },
            &t_list,
        )
        .unwrap();
        assert!(
            (fit.exponent - 1.0 / 3.0).abs() < 0.05,
            "order-2 exponent {}",
            fit.exponent
        );

        // no stationary point: phase t·s → superpolynomial decay
        let fit = decay_probe(
            |t| {
                let amp = move |s: f64| Complex64::new(bump(s), 0.0);
                let p = move |s: f64| t * s;
                let dp = move |_s: f64| t;
                let d2p = move |_s: f64| 0.0;
                integrate_oscillatory(
                    &PhaseSpec {
                        phase: &p,
                        dphase: &dp,
                        d2phase: &d2p,
                        amplitude: &amp,
                        interval: (-2.0, 2.0),
                        large_parameter: t,
                    },
                    1e-12,
                )
            },
            &[10.0, 20.0, 40.0, 80.0, 160.0, 320.0],
        )
        .unwrap();
        assert!(
            fit.exponent >= 2.0 || fit.underflow,
            "nonstationary exponent {} (underflow {})",
            fit.exponent,
            fit.underflow
        );
    }

    #[test]
    fn linearity_and_conjugation() {
        let bump = test_bump(0.0, 1.5);
        let tol = 1e-9;
        let make = |coef: f64, freq: f64| {
            let amp = move |s: f64| Complex64::new(coef * bump(s), 0.0);
            (amp, move |s: f64| freq * s * s, move |s: f64| 2.0 * freq * s, move |_s: f64| {
                2.0 * freq
            })
        };
        let (a1, p1, dp1, d2p1) = make(1.0, 30.0);
        let i1 = integrate_oscillatory(
            &PhaseSpec {
                phase: &p1,
                dphase: &dp1,
                d2phase: &d2p1,
                amplitude: &a1,
                interval: (-1.5, 1.5),
                large_parameter: 30.0,
            },
            tol,
        )
        .unwrap();
        let (a2, ..) = make(2.5, 30.0);
        let i2 = integrate_oscillatory(
            &PhaseSpec {
                phase: &p1,
                dphase: &dp1,
                d2phase: &d2p1,
                amplitude: &a2,
                interval: (-1.5, 1.5),
                large_parameter: 30.0,
            },
            tol,
        )
        .unwrap();
        assert!((i2 - i1 * 2.5).norm() < 2.0 * tol, "linearity");

        // conjugation: flipping the phase sign conjugates the value
        let pneg = |s: f64| -30.0 * s * s;
        let dpneg = |s: f64| -60.0 * s;
        let d2pneg = |_s: f64| -60.0;
        let ineg = integrate_oscillatory(
            &PhaseSpec {
                phase: &pneg,
                dphase: &dpneg,
                d2phase: &d2pneg,
                amplitude: &a1,
                interval: (-1.5, 1.5),
                large_parameter: 30.0,
            },
            tol,
        )
        .unwrap();
        assert!((ineg - i1.conj()).norm() < 2.0 * tol, "conjugation");
    }

    #[test]
    fn refinement_monotone_against_oversampled_reference() {
        let bump = test_bump(0.0, 1.5);
        let amp = |s: f64| Complex64::new(bump(s), 0.0);
        let p = |s: f64| 80.0 * (s * s * s / 3.0 - 0.3 * s);
        let dp = |s: f64| 80.0 * (s * s - 0.3);
        let d2p = |s: f64| 160.0 * s;
        let run = |tol: f64| {
            integrate_oscillatory(
                &PhaseSpec {
                    phase: &p,
                    dphase: &dp,
                    d2phase: &d2p,
                    amplitude: &amp,
                    interval: (-1.5, 1.5),
                    large_parameter: 80.0,
                },
                tol,
            )
            .unwrap()
        };
        let reference = run(1e-13);
        let mut prev = f64::INFINITY;
        for &tol in &[1e-4, 1e-5, 1e-6, 1e-7, 1e-8] {
            let d = (run(tol) - reference).norm();
            assert!(d <= prev + 1e-13, "discrepancy grew: {d} after {prev}");
            prev = d;
        }
    }

    #[test]
    fn gradient_check_catches_wrong_derivative() {
        let amp = |_s: f64| Complex64::new(1.0, 0.0);
        let p = |s: f64| s * s;
        let dp_good = |s: f64| 2.0 * s;
        let dp_bad = |s: f64| 2.2 * s;
        let d2p = |_s: f64| 2.0;
        let good = PhaseSpec {
            phase: &p,
            dphase: &dp_good,
            d2phase: &d2p,
            amplitude: &amp,
            interval: (0.1, 2.0),
            large_parameter: 1.0,
        };
        assert!(good.gradient_check(50) < 1e-6);
        let bad = PhaseSpec {
            phase: &p,
            dphase: &dp_bad,
            d2phase: &d2p,
            amplitude: &amp,
            interval: (0.1, 2.0),
            large_parameter: 1.0,
        };
        assert!(bad.gradient_check(50) > 1e-2);
    }

    #[test]
    fn rejects_bad_arguments() {
        let amp = |_s: f64| Complex64::new(1.0, 0.0);
        let p = |_s: f64| 0.0;
        let spec = PhaseSpec {
            phase: &p,
            dphase: &p,
            d2phase: &p,
            amplitude: &amp,
            interval: (1.0, 0.0),
            large_parameter: 1.0,
        };
        assert!(integrate_oscillatory(&spec, 1e-8).is_err());
        let spec2 = PhaseSpec {
            phase: &p,
            dphase: &p,
            d2phase: &p,
            amplitude: &amp,
            interval: (0.0, 1.0),
            large_parameter: 1.0,
        };
        assert!(integrate_oscillatory(&spec2, -1.0).is_err());
    }
}
