//! Dispersive-decay measurement harness: sup-norm scans, exponent fitting,
//! reflection-peak detection and regime classification.

mod fit;
mod regime;
mod scan;

pub use fit::{
    detect_peaks, fit_exponent, peak_count_cap, peak_times, DecayCurve, FitResult,
};
pub use regime::{regime_classifier, Regime};
pub use scan::{
    decay_curve_high_freq, decay_curve_low_freq, sup_scan, sup_scan_high_freq,
    sup_scan_low_freq, ScanGrid, ScanPoint,
};
