//! Smooth compactly supported cutoffs built from the exp(-1/u) mollifier.
//!
//! All spectral localisations used by the evaluators come from this family:
//! value 0 outside the support, 1 on the plateau, C^∞ monotone transitions.

/// Which standard cutoff a `Cutoff` realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffKind {
    /// supp [1/2, 3/2], = 1 near 1.
    Psi1,
    /// supp [1/2, 3/2], = 1 near 1 (dyadic partition generator).
    Psi,
    /// supp [3/4, 2], = 1 on [1, 3/2]; realized as φ(ρ) - φ(2ρ).
    Psi2,
    /// supp (-2, 2), = 1 on [0, 3/2].
    Phi,
    /// supp [-2, 2], = 1 on [-3/2, 3/2].
    Chi0,
    /// smooth step: 0 below 1, 1 above 2.
    Chi1,
}

/// A concrete smooth bump with declared support and plateau.
#[derive(Debug, Clone, Copy)]
pub struct Cutoff {
    pub kind: CutoffKind,
    /// closure of the support
    pub support: (f64, f64),
    /// interval where the value is exactly 1
    pub plateau: (f64, f64),
    /// transition profile parameter in g(u) = exp(-delta/u)
    pub delta: f64,
}

#[inline]
fn mollifier(u: f64, delta: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        (-delta / u).exp()
    }
}

/// C^∞ step: 0 for v <= 0, 1 for v >= 1, strictly increasing between.
#[inline]
pub fn smooth_step(v: f64, delta: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else if v >= 1.0 {
        1.0
    } else {
        let a = mollifier(v, delta);
        let b = mollifier(1.0 - v, delta);
        a / (a + b)
    }
}

/// Two-sided bump: support [s0, s1], plateau [p0, p1].
#[inline]
fn bump(x: f64, s0: f64, p0: f64, p1: f64, s1: f64, delta: f64) -> f64 {
    if x <= s0 || x >= s1 {
        return 0.0;
    }
    let rise = if x >= p0 {
        1.0
    } else {
        smooth_step((x - s0) / (p0 - s0), delta)
    };
    let fall = if x <= p1 {
        1.0
    } else {
        smooth_step((s1 - x) / (s1 - p1), delta)
    };
    rise * fall
}

impl Cutoff {
    pub fn new(kind: CutoffKind) -> Self {
        let (support, plateau) = match kind {
            CutoffKind::Psi1 | CutoffKind::Psi => ((0.5, 1.5), (0.6, 1.4)),
            CutoffKind::Psi2 => ((0.75, 2.0), (1.0, 1.5)),
            CutoffKind::Phi => ((-2.0, 2.0), (0.0, 1.5)),
            CutoffKind::Chi0 => ((-2.0, 2.0), (-1.5, 1.5)),
            CutoffKind::Chi1 => ((1.0, f64::INFINITY), (2.0, f64::INFINITY)),
        };
        Cutoff {
            kind,
            support,
            plateau,
            delta: 1.0,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.kind {
            CutoffKind::Psi1 | CutoffKind::Psi => bump(x, 0.5, 0.6, 1.4, 1.5, self.delta),
            // ψ₂(ρ) := φ(ρ) - φ(2ρ)
            CutoffKind::Psi2 => {
                let phi = Cutoff::new(CutoffKind::Phi);
                phi.value(x) - phi.value(2.0 * x)
            }
            CutoffKind::Phi => bump(x, -2.0, 0.0, 1.5, 2.0, self.delta),
            CutoffKind::Chi0 => bump(x, -2.0, -1.5, 1.5, 2.0, self.delta),
            CutoffKind::Chi1 => smooth_step(x - 1.0, self.delta),
        }
    }
}

/// The full set used across the evaluators, built once per context.
#[derive(Debug, Clone)]
pub struct CutoffSet {
    pub psi1: Cutoff,
    pub psi: Cutoff,
    pub psi2: Cutoff,
    pub phi: Cutoff,
    pub chi0: Cutoff,
    pub chi1: Cutoff,
}

impl CutoffSet {
    pub fn standard() -> Self {
        CutoffSet {
            psi1: Cutoff::new(CutoffKind::Psi1),
            psi: Cutoff::new(CutoffKind::Psi),
            psi2: Cutoff::new(CutoffKind::Psi2),
            phi: Cutoff::new(CutoffKind::Phi),
            chi0: Cutoff::new(CutoffKind::Chi0),
            chi1: Cutoff::new(CutoffKind::Chi1),
        }
    }
}

/// A generic test bump centered at `c` with half-width `w`: plateau on the
/// middle half. Used by the Dirac and Poisson-summation checks.
pub fn test_bump(c: f64, w: f64) -> impl Fn(f64) -> f64 + Sync + Send + Copy {
    move |x: f64| bump(x, c - w, c - 0.5 * w, c + 0.5 * w, c + w, 1.0)
}
