//! Green-function evaluators and their runtime registry.
//!
//! Three interchangeable representations of the (localized) propagator sit
//! behind the [`GreenRep`] trait and are selected by name at runtime:
//!
//! - `"spectral"`: the high-frequency gallery-mode sum,
//! - `"reflected"`: its Poisson resummation over boundary reflections,
//! - `"low-freq"`: the low-frequency spectral sum (all dyadic rings).
//!
//! Where the regimes overlap, registry members must agree; the acceptance
//! suite exercises exactly that.

pub mod lowfreq;
pub mod model;
pub mod spectral;

use crate::error::{Error, Result};
use crate::ModelContext;
use num_complex::Complex64;

/// Dyadic localization scale of a query, or the low-frequency marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaSpec {
    /// high-frequency dyadic window, max(a, h^{2/3}) ≲ γ ≲ 1
    Dyadic(f64),
    /// low-frequency query in ambient dimension d
    LowFrequency { d: usize },
}

/// One Green-function evaluation request.
#[derive(Debug, Clone, Copy)]
pub struct GreenQuery {
    /// mass m ∈ {0, 1}: 0 = wave, 1 = Klein-Gordon
    pub mass: u8,
    /// semiclassical parameter h ∈ (0, 1/2]
    pub h: f64,
    /// source distance to the boundary
    pub a: f64,
    pub gamma: GammaSpec,
    pub t: f64,
    /// observation point, x >= 0
    pub x: f64,
    pub y: f64,
    /// mode truncation; 0 = automatic from the cutoff support
    pub kmax: usize,
    /// absolute quadrature tolerance
    pub tol: f64,
}

impl GreenQuery {
    pub fn validate(&self) -> Result<()> {
        if self.mass > 1 {
            return Err(Error::argument("mass must be 0 or 1"));
        }
        if !(self.h > 0.0 && self.h <= 0.5) {
            return Err(Error::argument("h must lie in (0, 1/2]"));
        }
        if !(self.a > 0.0) {
            return Err(Error::argument("source distance a must be positive"));
        }
        if self.x < 0.0 {
            return Err(Error::domain("observation point must satisfy x >= 0"));
        }
        if ![self.t, self.x, self.y].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("query coordinates must be finite"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::argument("tolerance must be positive"));
        }
        if let GammaSpec::Dyadic(g) = self.gamma {
            if !(g > 0.0) {
                return Err(Error::argument("gamma must be positive"));
            }
        }
        Ok(())
    }

    pub fn dyadic_gamma(&self) -> Result<f64> {
        match self.gamma {
            GammaSpec::Dyadic(g) => Ok(g),
            GammaSpec::LowFrequency { .. } => Err(Error::argument(
                "query is marked low-frequency; this evaluator needs a dyadic gamma",
            )),
        }
    }
}

/// Evaluation result with bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct FieldValue {
    pub value: Complex64,
    /// modes actually summed
    pub mode_count: usize,
    pub error_estimate: f64,
    /// the spectral window contained no mode; the value is exactly 0
    pub empty_window: bool,
}

impl FieldValue {
    pub fn zero_empty() -> Self {
        FieldValue {
            value: Complex64::new(0.0, 0.0),
            mode_count: 0,
            error_estimate: 0.0,
            empty_window: true,
        }
    }
}

/// A Green-function representation selectable at runtime.
pub trait GreenRep: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// Whether the representation is applicable to the query's regime.
    fn supports(&self, q: &GreenQuery) -> bool;
    fn evaluate(&self, ctx: &ModelContext, q: &GreenQuery) -> Result<FieldValue>;
}

/// Name-indexed registry of representations; insertion order is stable so
/// listings and cross-checks are deterministic.
pub struct Registry {
    reps: Vec<Box<dyn GreenRep>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { reps: Vec::new() }
    }

    /// The built-in representations.
    pub fn builtin() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(spectral::SpectralSum));
        r.register(Box::new(crate::parametrix::ReflectedWaveSum));
        r.register(Box::new(lowfreq::LowFreqSum::default()));
        r
    }

    pub fn register(&mut self, rep: Box<dyn GreenRep>) {
        self.reps.push(rep);
    }

    pub fn get(&self, name: &str) -> Option<&dyn GreenRep> {
        self.reps.iter().find(|r| r.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.reps.iter().map(|r| r.name()).collect()
    }

    pub fn evaluate(&self, name: &str, ctx: &ModelContext, q: &GreenQuery) -> Result<FieldValue> {
        let rep = self
            .get(name)
            .ok_or_else(|| Error::Argument(format!("unknown representation '{name}'")))?;
        if !rep.supports(q) {
            return Err(Error::Regime(format!(
                "representation '{name}' does not cover this query"
            )));
        }
        rep.evaluate(ctx, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lists_builtins_in_order() {
        let r = Registry::builtin();
        assert_eq!(r.names(), vec!["spectral", "reflected", "low-freq"]);
        assert!(r.get("spectral").is_some());
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn query_validation() {
        let mut q = GreenQuery {
            mass: 0,
            h: 0.01,
            a: 0.25,
            gamma: GammaSpec::Dyadic(0.25),
            t: 1.0,
            x: 0.2,
            y: -1.0,
            kmax: 0,
            tol: 1e-6,
        };
        assert!(q.validate().is_ok());
        q.h = 0.7;
        assert!(q.validate().is_err());
        q.h = 0.01;
        q.mass = 2;
        assert!(q.validate().is_err());
        q.mass = 0;
        q.x = -1.0;
        assert!(q.validate().is_err());
    }
}
