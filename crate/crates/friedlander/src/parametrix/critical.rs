//! Critical points of the reflected-wave phase and the overlap counter.
//!
//! On critical points Υ² + X = A and S² + a/γ = A, so per sign branch of
//! (Υ, S) the four-equation system reduces to the A- and η-criticality of
//! Ψ. The A-equation is well conditioned and solved first at fixed η; the
//! remaining η-equation G(η) := ∂_ηΨ(A(η), η) is then scanned for roots.
//!
//! For m = 0, N = 0 the phase is η·(bracket) and G does not depend on η at
//! all: critical sets are curves {(Υ, S, A) fixed, η free}, which exist only
//! when the observation point sits on the wave front (G ≡ 0). The solver
//! detects this flat case and reports one representative point per branch.

use super::phase::{phase_psi, PhaseParams, PhasePoint};
use crate::error::Result;
use crate::specfun::b_phase_deriv;
use crate::ModelContext;

/// One critical point in the rescaled variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub upsilon: f64,
    pub s: f64,
    pub a: f64,
    pub eta: f64,
    /// the phase is η-independent here (free-wave branch): any η is critical
    pub eta_flat: bool,
}

const A_HI: f64 = 8.01;
const ETA_BOX: (f64, f64) = (0.5, 1.5);
/// |∂_ηΨ| threshold counting as "on the front" in the flat branch
const FLAT_TOL_SCALE: f64 = 1e-9;

struct Branch<'a> {
    ctx: &'a ModelContext,
    prm: &'a PhaseParams,
    t: f64,
    x: f64,
    y: f64,
    n: f64,
    su: f64,
    ss: f64,
}

impl Branch<'_> {
    fn a_floor(&self) -> f64 {
        0.74f64.max(self.x).max(self.prm.a_over_gamma)
    }

    /// ∂_AΨ/η with Υ, S eliminated through the sign branch.
    fn g_a(&self, a: f64, eta: f64) -> f64 {
        let aog = self.prm.a_over_gamma;
        let up = self.su * (a - self.x).max(0.0).sqrt();
        let s = self.ss * (a - aog).max(0.0).sqrt();
        let m2 = (self.prm.mass as f64) * (self.prm.mass as f64);
        let h = self.prm.h;
        let gamma = self.prm.gamma;
        let lam = self.prm.lambda_gamma();
        let mh2 = m2 * h * h / (eta * eta);
        let root = (1.0 + gamma * a + mh2).sqrt();
        let bp = b_phase_deriv(&self.ctx.airy, eta * lam * a.powf(1.5));
        -(up + s) + self.t / (2.0 * root) - 2.0 * self.n * a.sqrt() * (1.0 - 0.75 * bp)
    }

    /// ∂_ηΨ with Υ, S eliminated.
    fn g_eta(&self, a: f64, eta: f64) -> f64 {
        let aog = self.prm.a_over_gamma;
        let up = self.su * (a - self.x).max(0.0).sqrt();
        let s = self.ss * (a - aog).max(0.0).sqrt();
        let m2 = (self.prm.mass as f64) * (self.prm.mass as f64);
        let h = self.prm.h;
        let gamma = self.prm.gamma;
        let lam = self.prm.lambda_gamma();
        let mh2 = m2 * h * h / (eta * eta);
        let root = (1.0 + gamma * a + mh2).sqrt();
        let root1 = (1.0 + gamma).sqrt();
        let bp = b_phase_deriv(&self.ctx.airy, eta * lam * a.powf(1.5));
        let cubics = up * up * up / 3.0 + up * (self.x - a) + s * s * s / 3.0 + s * (aog - a);
        self.y + cubics + self.t * (root - root1) / gamma - self.t * mh2 / (gamma * root)
            - 4.0 / 3.0 * self.n * a.powf(1.5)
            + self.n * a.powf(1.5) * bp
    }

    /// Roots of g_a(·, η) on (a_floor, a_hi], by scan + bisection.
    fn a_roots(&self, eta: f64, a_hi: f64) -> Vec<f64> {
        let lo = self.a_floor() + 1e-9;
        if lo >= a_hi {
            return Vec::new();
        }
        const GRID: usize = 96;
        let mut out = Vec::new();
        let mut prev = self.g_a(lo, eta);
        for i in 1..=GRID {
            let a = lo + (a_hi - lo) * i as f64 / GRID as f64;
            let cur = self.g_a(a, eta);
            if prev * cur < 0.0 {
                let (mut xa, mut xb, mut fa) =
                    (lo + (a_hi - lo) * (i - 1) as f64 / GRID as f64, a, prev);
                for _ in 0..70 {
                    let m = 0.5 * (xa + xb);
                    let fm = self.g_a(m, eta);
                    if fa * fm <= 0.0 {
                        xb = m;
                    } else {
                        xa = m;
                        fa = fm;
                    }
                }
                out.push(0.5 * (xa + xb));
            }
            prev = cur;
        }
        out
    }

    fn point(&self, a: f64, eta: f64, eta_flat: bool) -> CriticalPoint {
        CriticalPoint {
            upsilon: self.su * (a - self.x).max(0.0).sqrt(),
            s: self.ss * (a - self.prm.a_over_gamma).max(0.0).sqrt(),
            a,
            eta,
            eta_flat,
        }
    }
}

/// All solutions of ∇_{(Υ,S,A,η)} Ψ = 0 with A in the search box
/// (max(3/4, X, a/γ), 8], η in the ψ₁-support, |Υ|, |S| <= 3.
pub fn critical_solve(
    ctx: &ModelContext,
    n: i64,
    t: f64,
    x: f64,
    y: f64,
    prm: &PhaseParams,
) -> Result<Vec<CriticalPoint>> {
    let mut out: Vec<CriticalPoint> = Vec::new();
    let scale = 1.0 + t.abs() + y.abs();
    const NETA: usize = 17;
    for &su in &[1.0, -1.0] {
        for &ss in &[1.0, -1.0] {
            let br = Branch {
                ctx,
                prm,
                t,
                x,
                y,
                n: n as f64,
                su,
                ss,
            };
            // follow each A-root family along the η-grid and look for
            // sign changes (or flatness) of G(η) = ∂_ηΨ(A(η), η)
            let etas: Vec<f64> = (0..NETA)
                .map(|i| ETA_BOX.0 + (ETA_BOX.1 - ETA_BOX.0) * (i as f64 + 0.5) / NETA as f64)
                .collect();
            let layers: Vec<Vec<f64>> = etas.iter().map(|&e| br.a_roots(e, A_HI)).collect();
            for (ie, eta) in etas.iter().enumerate() {
                for (ir, &a) in layers[ie].iter().enumerate() {
                    let g = br.g_eta(a, *eta);
                    if g.abs() < FLAT_TOL_SCALE * scale {
                        push_dedup(&mut out, br.point(a, *eta, true));
                        continue;
                    }
                    // sign change against the matching root at the next η
                    if ie + 1 < etas.len() {
                        if let Some(&a2) = layers[ie + 1].get(ir) {
                            let g2 = br.g_eta(a2, etas[ie + 1]);
                            if g * g2 < 0.0 {
                                // bisect in η, re-solving A at each step
                                let (mut e_lo, mut e_hi, mut g_lo) = (*eta, etas[ie + 1], g);
                                let mut a_cur = a;
                                for _ in 0..70 {
                                    let em = 0.5 * (e_lo + e_hi);
                                    let roots = br.a_roots(em, A_HI);
                                    let Some(&am) = roots.iter().min_by(|p, q| {
                                        (*p - a_cur)
                                            .abs()
                                            .partial_cmp(&(*q - a_cur).abs())
                                            .unwrap()
                                    }) else {
                                        break;
                                    };
                                    let gm = br.g_eta(am, em);
                                    a_cur = am;
                                    if g_lo * gm <= 0.0 {
                                        e_hi = em;
                                    } else {
                                        e_lo = em;
                                        g_lo = gm;
                                    }
                                }
                                push_dedup(&mut out, br.point(a_cur, 0.5 * (e_lo + e_hi), false));
                            }
                        }
                    }
                }
            }
        }
    }
    // verify against the full analytic gradient (flat points skip ∂_η)
    let mut verified = Vec::new();
    for cp in out {
        if cp.upsilon.abs() > 3.0 || cp.s.abs() > 3.0 {
            continue;
        }
        let p = PhasePoint {
            n,
            t,
            x,
            y,
            upsilon: cp.upsilon,
            s: cp.s,
            a: cp.a,
            eta: cp.eta,
        };
        let (_, grad) = phase_psi(ctx, &p, prm)?;
        let gmax = grad[0].abs().max(grad[1].abs()).max(grad[2].abs());
        let geta_ok = cp.eta_flat || grad[3].abs() < 1e-7 * scale;
        if gmax < 1e-7 * scale && grad[3].abs() < 1e-6 * scale.max(1.0) && geta_ok {
            verified.push(cp);
        }
    }
    verified.sort_by(|p, q| {
        (p.a, p.eta, p.upsilon)
            .partial_cmp(&(q.a, q.eta, q.upsilon))
            .unwrap()
    });
    Ok(verified)
}

fn push_dedup(out: &mut Vec<CriticalPoint>, cand: CriticalPoint) {
    let dup = out.iter().any(|c| {
        (c.upsilon - cand.upsilon).abs() + (c.s - cand.s).abs() + (c.a - cand.a).abs() < 1e-6
            && (c.eta_flat == cand.eta_flat)
            && (c.eta_flat || (c.eta - cand.eta).abs() < 1e-6)
    });
    if !dup {
        out.push(cand);
    }
}

/// Overlap report for one space-time location.
#[derive(Debug, Clone)]
pub struct OverlapReport {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub gamma: f64,
    pub h: f64,
    pub mass: u8,
    /// reflections with a significant stationary point somewhere in the
    /// neighborhood box
    pub members: Vec<i64>,
    /// 1 + t h²/γ^{7/2} + m² |t| h²/γ^{3/2}
    pub bound_rhs: f64,
}

/// Count the reflections contributing near (t, x, y): the box
/// |t'-t| <= √γ, |x'-x| < γ (clamped to x' >= 0),
/// |y'+t'√(1+γ) - y - t√(1+γ)| < γ^{3/2} is sampled with 5 probes per
/// (t', x') axis; the y'-direction enters the η-criticality equation
/// affinely with unit coefficient and is folded exactly: a reflection
/// contributes iff |∂_ηΨ| at the A-critical point stays within the
/// half-width of the rescaled y-box. The source sits tangentially, a = γ.
pub fn overlap_count(
    ctx: &ModelContext,
    t: f64,
    x: f64,
    y: f64,
    gamma: f64,
    h: f64,
    mass: u8,
) -> Result<OverlapReport> {
    let prm = PhaseParams {
        mass,
        gamma,
        h,
        a_over_gamma: 1.0,
    };
    let sqg = gamma.sqrt();
    let y_center = (y + t * (1.0 + gamma).sqrt()) / gamma.powf(1.5);
    let offsets = [-0.99, -0.5, 0.0, 0.5, 0.99];
    let probes: Vec<(f64, f64)> = offsets
        .iter()
        .flat_map(|&ot| {
            offsets
                .iter()
                .map(move |&ox| ((t + sqg * ot) / sqg, (x + gamma * ox).max(0.0) / gamma))
        })
        .collect();

    // candidate range from the A-criticality equation bounds
    let t_hi = (t.abs() / sqg) + 1.0;
    let n_lo = ((-t_hi / 2.0 - 3.0) / 1.7).floor() as i64 - 1;
    let n_hi = ((t_hi / 2.0 + 3.0) / 1.7).ceil() as i64 + 1;

    const NETA: usize = 9;
    let etas: Vec<f64> = (0..NETA)
        .map(|i| ETA_BOX.0 + (ETA_BOX.1 - ETA_BOX.0) * (i as f64 + 0.5) / NETA as f64)
        .collect();
    // significance: the packet symbol needs ψ₂(A) > 0
    let a_sig_hi = 2.005f64;

    let mut members = Vec::new();
    for n in n_lo..=n_hi {
        'outer: for &(tp, xp) in &probes {
            for &su in &[1.0f64, -1.0] {
                for &ss in &[1.0f64, -1.0] {
                    let br = Branch {
                        ctx,
                        prm: &prm,
                        t: tp,
                        x: xp,
                        y: y_center,
                        n: n as f64,
                        su,
                        ss,
                    };
                    for &eta in &etas {
                        for a in br.a_roots(eta, a_sig_hi) {
                            if ctx.cutoffs.psi2.value(a) <= 0.0 {
                                continue;
                            }
                            // y'-box folded exactly: member iff the
                            // η-criticality defect fits inside it
                            if br.g_eta(a, eta).abs() <= 0.995 {
                                members.push(n);
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    members.sort_unstable();
    members.dedup();

    let m2 = (mass as f64) * (mass as f64);
    let bound_rhs =
        1.0 + t.abs() * h * h / gamma.powf(3.5) + m2 * t.abs() * h * h / gamma.powf(1.5);
    Ok(OverlapReport {
        t,
        x,
        y,
        gamma,
        h,
        mass,
        members,
        bound_rhs,
    })
}
