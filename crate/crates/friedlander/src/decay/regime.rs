//! Time-regime classification for the tangential dispersive envelope.

/// The five decay regimes in increasing time, with the predicted envelope
/// exponent of sup |G| within each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// t <= √a: free wave, (h/t)^{1/2}
    Free,
    /// √a < t <= a/h^{1/3}: reflection-peak lattice, (h/t)^{1/4} a^{1/4}
    FiniteLattice,
    /// a/h^{1/3} < t < a²/h (reflections between λ^{1/3} and λ)
    MidReflections,
    /// a²/h <= t < a^{7/2}/h² (reflections between λ and λ²)
    LargeReflections,
    /// t >= a^{7/2}/h²: unbounded overlap, spectral-sum territory, (h/t)^{1/3}
    SpectralOverlap,
}

impl Regime {
    pub fn envelope_exponent(self) -> f64 {
        match self {
            Regime::Free => 0.5,
            Regime::FiniteLattice | Regime::MidReflections => 0.25,
            Regime::LargeReflections | Regime::SpectralOverlap => 1.0 / 3.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::Free => "free",
            Regime::FiniteLattice => "finite-N lattice",
            Regime::MidReflections => "N in (lambda^1/3, lambda)",
            Regime::LargeReflections => "N in (lambda, lambda^2)",
            Regime::SpectralOverlap => "spectral-overlap",
        }
    }
}

/// Classify a time against the tangential thresholds. `gamma` widens the
/// base scale in the almost-transverse case γ > 4a; the tangential case
/// uses the source distance itself.
pub fn regime_classifier(t: f64, a: f64, gamma: f64, h: f64) -> Regime {
    let base = if gamma > 4.0 * a { gamma } else { a };
    let t = t.abs();
    if t <= base.sqrt() {
        Regime::Free
    } else if t <= base / h.powf(1.0 / 3.0) {
        Regime::FiniteLattice
    } else if t < base * base / h {
        Regime::MidReflections
    } else if t < base.powf(3.5) / (h * h) {
        Regime::LargeReflections
    } else {
        Regime::SpectralOverlap
    }
}
