//! Numerical toolkit for the wave and Klein-Gordon propagators in the
//! Friedlander model half-space `{x > 0}` with Laplacian `∂²ₓ + (1+x)Δ_y`.
//!
//! The library provides:
//! - Airy special functions, Airy zeros and the spectral phase `L(ω)`
//!   ([`specfun`]);
//! - gallery-mode eigenfunctions of `-∂²ₓ + (1+x)θ²` ([`modes`]);
//! - an oscillatory-integral engine with stationary-point analysis
//!   ([`oscquad`]);
//! - interchangeable Green-function representations (high-frequency
//!   spectral sum, Poisson-resummed reflected-wave sum, low-frequency
//!   spectral sum) behind a common registry ([`green`], [`parametrix`]);
//! - a dispersive-decay measurement harness: sup-norm scans, power-law
//!   exponent fits, reflection-peak detection ([`decay`]).

pub mod cutoff;
mod dd;
pub mod decay;
pub mod error;
pub mod green;
pub mod modes;
pub mod oscquad;
pub mod parametrix;
pub mod specfun;

pub use error::{Error, Result};

use cutoff::CutoffSet;
use specfun::AiryTable;

/// Shared immutable state: the Airy-zero table and the cutoff family.
///
/// Construction is single-threaded; afterwards the context is read-only and
/// safe to share across worker threads.
#[derive(Debug, Clone)]
pub struct ModelContext {
    pub airy: AiryTable,
    pub cutoffs: CutoffSet,
}

impl ModelContext {
    pub fn new(zero_count: usize) -> Result<Self> {
        Ok(ModelContext {
            airy: AiryTable::new(zero_count.max(8))?,
            cutoffs: CutoffSet::standard(),
        })
    }

    /// Default table size; covers ω up to ~285, i.e. every spectral window
    /// used by the bundled evaluators and scans.
    pub fn standard() -> Self {
        Self::new(1024).expect("default table construction")
    }
}
