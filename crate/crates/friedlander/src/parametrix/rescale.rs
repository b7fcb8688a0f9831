//! Transverse dyadic rescaling: the (h, h̃) family reduces to the tangential
//! γ = 1 family with effective semiclassical parameter h³/h̃² via
//! T = t (h/h̃)², X = x h²/h̃², Y = (h³/h̃³)(y + t), ã = a (h/h̃)², λ̃ = h̃²/h³.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransverseRescale {
    Scaled {
        t: f64,
        x: f64,
        y: f64,
        a_tilde: f64,
        lambda_tilde: f64,
    },
    /// a > 4 (h̃/h)²: the source sits beyond the transverse window and the
    /// whole dyadic block is negligible.
    Negligible,
}

pub fn transverse_rescale(
    h: f64,
    h_tilde: f64,
    t: f64,
    x: f64,
    a: f64,
    y: f64,
) -> Result<TransverseRescale> {
    if !(h > 0.0 && h_tilde > 0.0) {
        return Err(Error::argument("h and h̃ must be positive"));
    }
    if h_tilde < h {
        return Err(Error::argument("transverse regime requires h̃ >= h"));
    }
    if !(a > 0.0) {
        return Err(Error::argument("source distance must be positive"));
    }
    let r = h / h_tilde;
    if a > 4.0 / (r * r) {
        return Ok(TransverseRescale::Negligible);
    }
    Ok(TransverseRescale::Scaled {
        t: t * r * r,
        x: x * r * r,
        y: (y + t) * r * r * r,
        a_tilde: a * r * r,
        lambda_tilde: h_tilde * h_tilde / (h * h * h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_equal_scales() {
        let got = transverse_rescale(0.01, 0.01, 3.0, 0.5, 0.8, -2.0).unwrap();
        match got {
            TransverseRescale::Scaled {
                t,
                x,
                a_tilde,
                lambda_tilde,
                ..
            } => {
                assert_eq!(t, 3.0);
                assert_eq!(x, 0.5);
                assert_eq!(a_tilde, 0.8);
                assert!((lambda_tilde - 100.0).abs() < 1e-12);
            }
            _ => panic!("expected scaled"),
        }
    }

    #[test]
    fn quarter_scaling() {
        let got = transverse_rescale(0.01, 0.02, 100.0, 0.0, 1.0, 0.0).unwrap();
        match got {
            TransverseRescale::Scaled { t, y, .. } => {
                assert!((t - 25.0).abs() < 1e-12);
                assert!((y - 100.0 / 8.0).abs() < 1e-12);
            }
            _ => panic!("expected scaled"),
        }
    }

    #[test]
    fn negligible_beyond_window() {
        let got = transverse_rescale(0.01, 0.02, 1.0, 0.0, 17.0, 0.0).unwrap();
        assert_eq!(got, TransverseRescale::Negligible);
        // boundary is inclusive
        let got = transverse_rescale(0.01, 0.02, 1.0, 0.0, 16.0, 0.0).unwrap();
        assert!(matches!(got, TransverseRescale::Scaled { .. }));
    }

    #[test]
    fn rejects_inverted_scales() {
        assert!(transverse_rescale(0.02, 0.01, 1.0, 0.0, 1.0, 0.0).is_err());
    }
}
