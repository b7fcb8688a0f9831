//! Zeros of Ai(-·) and the derived mode table.

use super::airy::{ai_pair, ai_unchecked};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Precomputed Airy-zero data shared by every module.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct AiryTable {
    /// ω_k, increasing, Ai(-ω_k) = 0.
    pub zeros: Vec<f64>,
    /// Ai'(-ω_k).
    pub aiprime_at_zeros: Vec<f64>,
    /// L'(ω_k) = 2π Ai'(-ω_k)^2.
    pub lprime: Vec<f64>,
    /// Chebyshev coefficients of L and L' on the mid-range window (hot-path
    /// acceleration; the branch-resolved evaluation stays the reference).
    pub(crate) cheb_l: Vec<f64>,
    pub(crate) cheb_lp: Vec<f64>,
}

impl AiryTable {
    pub fn new(count: usize) -> Result<Self> {
        let zeros = airy_zeros(count.max(8))?;
        let aiprime_at_zeros: Vec<f64> = zeros.iter().map(|&w| ai_pair(-w).1).collect();
        let lprime: Vec<f64> = aiprime_at_zeros.iter().map(|&d| 2.0 * PI * d * d).collect();
        let mut table = AiryTable {
            zeros,
            aiprime_at_zeros,
            lprime,
            cheb_l: Vec::new(),
            cheb_lp: Vec::new(),
        };
        let (cl, clp) = super::phase::fit_phase_interpolants(&table);
        table.cheb_l = cl;
        table.cheb_lp = clp;
        Ok(table)
    }

    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    /// ω_k with 1-based k.
    pub fn zero(&self, k: usize) -> Result<f64> {
        self.zeros
            .get(k.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Argument(format!("mode index {k} out of range 1..={}", self.count())))
    }

    /// L'(ω_k) with 1-based k, in the identity form 2π Ai'(-ω_k)^2.
    pub fn lprime_at_zero(&self, k: usize) -> Result<f64> {
        self.lprime
            .get(k.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Argument(format!("mode index {k} out of range 1..={}", self.count())))
    }

    /// Number of zeros strictly below `omega` (all of them tabulated).
    pub fn zeros_below(&self, omega: f64) -> usize {
        self.zeros.partition_point(|&w| w < omega)
    }

    /// Largest tabulated zero.
    pub fn max_zero(&self) -> f64 {
        *self.zeros.last().expect("non-empty table")
    }
}

/// Asymptotic seed ω_k ≈ T(3π(4k-1)/8), T(t) = t^{2/3}(1 + 5/48 t^{-2} - 5/36 t^{-4}).
fn zero_seed(k: usize) -> f64 {
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = t * t;
    t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 / t2 - 5.0 / 36.0 / (t2 * t2))
}

/// First K zeros of Ai(-·), bisection-bracketed then Newton-polished to 1e-12.
pub fn airy_zeros(count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::argument("zero count must be >= 1"));
    }
    let mut out = Vec::with_capacity(count);
    for k in 1..=count {
        let seed = zero_seed(k);
        // bracket: seeds are accurate to ~1e-3 already for k = 1
        let spread = 0.05 * (1.0 + seed.sqrt()) / (k as f64).max(1.0) + 1e-3;
        let (mut lo, mut hi) = (seed - spread, seed + spread);
        let mut flo = ai_unchecked(-lo);
        while flo * ai_unchecked(-hi) > 0.0 {
            lo -= spread;
            hi += spread;
            flo = ai_unchecked(-lo);
            if hi - lo > 2.0 {
                return Err(Error::Internal(format!("failed to bracket zero {k}")));
            }
        }
        // a few bisection steps to stabilise, then Newton on F(ω) = Ai(-ω)
        for _ in 0..6 {
            let mid = 0.5 * (lo + hi);
            let fm = ai_unchecked(-mid);
            if flo * fm <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        let mut w = 0.5 * (lo + hi);
        for _ in 0..30 {
            let (f, fp) = ai_pair(-w);
            // dF/dω = -Ai'(-ω)
            let step = f / fp;
            let next = w + step;
            let next = next.clamp(lo, hi);
            if (next - w).abs() < 1e-13 * w.max(1.0) {
                w = next;
                break;
            }
            w = next;
        }
        out.push(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros_match_reference() {
        // mpmath airyaizero
        let table = AiryTable::new(20).unwrap();
        let refs = [
            (1, 2.3381074104597670385),
            (2, 4.0879494441309706166),
            (3, 5.5205598280955510591),
            (4, 6.7867080900717589988),
            (8, 11.008524303733262893),
            (20, 20.53733290767756636),
        ];
        for (k, want) in refs {
            let got = table.zero(k).unwrap();
            assert!(
                (got - want).abs() < 1e-9,
                "omega_{k} = {got}, want {want}"
            );
        }
    }

    #[test]
    fn omega1_in_stated_interval() {
        let z = airy_zeros(1).unwrap();
        assert!(z[0] > 2.33 && z[0] < 2.34);
    }

    #[test]
    fn zeros_strictly_increasing_and_are_roots() {
        let table = AiryTable::new(128).unwrap();
        for w in table.zeros.windows(2) {
            assert!(w[1] > w[0]);
        }
        for &w in &table.zeros {
            assert!(ai_unchecked(-w).abs() < 1e-10, "Ai(-{w}) not small");
        }
    }

    #[test]
    fn zero_counting_exact() {
        let table = AiryTable::new(40).unwrap();
        for k in [1usize, 5, 17, 40] {
            let w = table.zero(k).unwrap();
            assert_eq!(table.zeros_below(w + 1e-6), k);
        }
    }

    #[test]
    fn lprime_positive_and_asymptotic_ratio() {
        let table = AiryTable::new(64).unwrap();
        for (i, &lp) in table.lprime.iter().enumerate() {
            assert!(lp > 0.0);
            if i + 1 >= 20 {
                let ratio = lp / (2.0 * table.zeros[i].sqrt());
                assert!(
                    (ratio - 1.0).abs() < 0.05,
                    "L'(omega_{})/(2 sqrt(omega)) = {ratio}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn lprime_reference_value() {
        let table = AiryTable::new(2).unwrap();
        // 2π Ai'(-ω_1)^2, mpmath
        assert!((table.lprime_at_zero(1).unwrap() - 3.0894209651831264392).abs() < 1e-9);
    }

    #[test]
    fn rejects_zero_count() {
        assert!(airy_zeros(0).is_err());
    }

    #[test]
    fn big_table_is_reasonable() {
        let table = AiryTable::new(1024).unwrap();
        assert!((table.zero(1024).unwrap() - 285.51134260628302269).abs() < 1e-8);
    }
}
