//! Numerical check of the Poisson summation identity
//! Σ_{N∈ℤ} ∫ e^{-i N L(ω)} φ(ω) dω = 2π Σ_k φ(ω_k)/L'(ω_k).

use crate::error::{Error, Result};
use crate::oscquad::{integrate_oscillatory, PhaseSpec};
use crate::specfun::{l_prime, l_value};
use crate::ModelContext;
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub struct PoissonCheck {
    /// truncated left side Σ_{|N| <= nmax} ∫ e^{-iNL} φ
    pub lhs: Complex64,
    /// right side 2π Σ_k φ(ω_k)/L'(ω_k)
    pub rhs: f64,
}

impl PoissonCheck {
    pub fn rel_err(&self) -> f64 {
        if self.rhs == 0.0 {
            self.lhs.norm()
        } else {
            (self.lhs - Complex64::new(self.rhs, 0.0)).norm() / self.rhs.abs()
        }
    }
}

/// Evaluate both sides for a test function supported in `support ⊂ (0, ∞)`.
pub fn airy_poisson_check<F>(
    ctx: &ModelContext,
    testfn: F,
    support: (f64, f64),
    nmax: usize,
) -> Result<PoissonCheck>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(support.0 < support.1) || support.0 < 0.0 {
        return Err(Error::argument("test function support must be an interval in (0, ∞)"));
    }
    if support.1 > ctx.airy.max_zero() {
        return Err(Error::Argument(format!(
            "support reaches ω = {} beyond the zero table (max {})",
            support.1,
            ctx.airy.max_zero()
        )));
    }

    let rhs: f64 = (1..=ctx.airy.count())
        .filter(|&k| {
            let w = ctx.airy.zeros[k - 1];
            w > support.0 && w < support.1
        })
        .map(|k| {
            2.0 * std::f64::consts::PI * testfn(ctx.airy.zeros[k - 1]) / ctx.airy.lprime[k - 1]
        })
        .sum();

    let ns: Vec<i64> = (-(nmax as i64)..=nmax as i64).collect();
    let terms: Vec<Result<Complex64>> = ns
        .par_iter()
        .map(|&n| {
            let nn = n as f64;
            let phase = move |w: f64| -nn * l_value(&ctx.airy, w);
            let dphase = move |w: f64| -nn * l_prime(&ctx.airy, w);
            let d2phase = move |w: f64| {
                let h = 1e-6;
                (dphase(w + h) - dphase(w - h)) / (2.0 * h)
            };
            let amplitude = |w: f64| Complex64::new(testfn(w), 0.0);
            integrate_oscillatory(
                &PhaseSpec {
                    phase: &phase,
                    dphase: &dphase,
                    d2phase: &d2phase,
                    amplitude: &amplitude,
                    interval: support,
                    large_parameter: (nn.abs() + 1.0),
                },
                1e-10,
            )
        })
        .collect();
    let mut lhs = Complex64::new(0.0, 0.0);
    for t in terms {
        lhs += t?;
    }
    Ok(PoissonCheck { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoff::test_bump;
    use crate::ModelContext;

    #[test]
    fn bump_at_first_zero_converges() {
        let ctx = ModelContext::new(16).unwrap();
        let w1 = ctx.airy.zeros[0];
        let bump = test_bump(w1, 0.3);
        let coarse = airy_poisson_check(&ctx, bump, (w1 - 0.3, w1 + 0.3), 200).unwrap();
        let fine = airy_poisson_check(&ctx, bump, (w1 - 0.3, w1 + 0.3), 400).unwrap();
        // convergence oracle: doubling Nmax stabilizes the left side
        assert!(
            (coarse.lhs - fine.lhs).norm() < 5e-3 * fine.rhs.abs(),
            "lhs not converged: {} vs {}",
            coarse.lhs,
            fine.lhs
        );
        assert!(fine.rel_err() <= 1e-3, "rel err {}", fine.rel_err());
        // rhs is exactly 2π φ(ω₁)/L'(ω₁) here
        let expect = 2.0 * std::f64::consts::PI * bump(w1) / ctx.airy.lprime[0];
        assert!((fine.rhs - expect).abs() < 1e-12);
    }

    #[test]
    fn gap_bump_gives_zero() {
        let ctx = ModelContext::new(16).unwrap();
        let (w1, w2) = (ctx.airy.zeros[0], ctx.airy.zeros[1]);
        let c = 0.5 * (w1 + 0.2 + w2 - 0.2);
        let w = 0.5 * (w2 - 0.2 - (w1 + 0.2));
        let bump = test_bump(c, w);
        let check = airy_poisson_check(&ctx, bump, (c - w, c + w), 400).unwrap();
        assert_eq!(check.rhs, 0.0);
        // ‖testfn‖_∞ = 1
        assert!(check.lhs.norm() < 1e-4, "|lhs| = {}", check.lhs.norm());
    }

    #[test]
    fn lhs_is_real_by_conjugate_pairing() {
        let ctx = ModelContext::new(16).unwrap();
        let w1 = ctx.airy.zeros[0];
        let bump = test_bump(w1, 0.25);
        let check = airy_poisson_check(&ctx, bump, (w1 - 0.25, w1 + 0.25), 50).unwrap();
        assert!(
            check.lhs.im.abs() < 1e-10 * check.lhs.re.abs().max(1.0),
            "imag {}",
            check.lhs.im
        );
    }

    #[test]
    fn rejects_bad_support() {
        let ctx = ModelContext::new(16).unwrap();
        assert!(airy_poisson_check(&ctx, |_| 1.0, (2.0, 1.0), 10).is_err());
        assert!(airy_poisson_check(&ctx, |_| 1.0, (1.0, 500.0), 10).is_err());
    }
}
