//! Poisson-summed reflected-wave machinery: the rescaled phase and its
//! critical points, single wave packets and their windowed sums, the
//! Airy-Poisson identity check, the overlap counter, and the transverse
//! rescaling.

mod critical;
mod packet;
mod phase;
mod poisson;
mod rescale;

pub use critical::{critical_solve, overlap_count, CriticalPoint, OverlapReport};
pub use packet::{default_window, sum_reflected, wave_packet, ReflectedWaveSum, MIN_LAMBDA_GAMMA};
pub use phase::{critical_yt_residual, phase_psi, phase_unscaled, PhaseParams, PhasePoint};
pub use poisson::{airy_poisson_check, PoissonCheck};
pub use rescale::{transverse_rescale, TransverseRescale};
