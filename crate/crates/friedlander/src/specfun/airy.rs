//! Airy function of the first kind on the real axis and on the two rotated
//! rays `e^{∓iπ/3}·ℝ` used by the incoming/outgoing splitting.
//!
//! Evaluation scheme: Maclaurin series (in double-double arithmetic) for
//! |x| <= 9, Poincaré asymptotic expansions beyond. At the switch point the
//! truncation error of the optimally truncated asymptotic series is
//! ~e^{-2ζ(9)} ≈ 1e-15, and the double-double series keeps absolute rounding
//! below 1e-24, so both branches agree to well under 1e-10 across the
//! validation band [8.5, 9.5].

use crate::dd::Dd;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Ai(0) = 3^{-2/3}/Γ(2/3), double-double.
const AI0: Dd = Dd {
    hi: 0.3550280538878172,
    lo: 2.05233632436212e-17,
};
/// Ai'(0) = -3^{-1/3}/Γ(1/3), double-double.
const AIP0: Dd = Dd {
    hi: -0.2588194037928068,
    lo: 2.522243111610832e-17,
};

const SERIES_LIMIT: f64 = 9.0;

/// f, g, f', g' of the standard Airy basis at x, in double-double.
/// f(x) = Σ c_k x^{3k},  g(x) = Σ d_k x^{3k+1},  y'' = x y.
fn basis_series(x: f64) -> (Dd, Dd, Dd, Dd) {
    let x_dd = Dd::from_f64(x);
    let x2 = x_dd.mul(x_dd);
    let x3 = x2.mul(x_dd);

    // f and f' = Σ 3k c_k x^{3k-1}
    let mut f = Dd::from_f64(1.0);
    let mut fp = Dd::ZERO;
    let mut term = Dd::from_f64(1.0);
    let mut k = 0usize;
    loop {
        let denom = ((3 * k + 2) * (3 * k + 3)) as f64;
        term = term.mul(x3).div_f64(denom);
        k += 1;
        f = f.add(term);
        // derivative term: 3k c_k x^{3k-1} = (3k/x) * term  (x != 0 handled below)
        if x != 0.0 {
            fp = fp.add(term.mul_f64(3.0 * k as f64).div_f64(x));
        }
        if term.abs() < 1e-40 * f.abs().max(1.0) || k > 200 {
            break;
        }
    }

    // g and g' = Σ (3k+1) d_k x^{3k}
    let mut g = x_dd;
    let mut gp = Dd::from_f64(1.0);
    let mut termg = x_dd;
    let mut kg = 0usize;
    loop {
        let denom = ((3 * kg + 3) * (3 * kg + 4)) as f64;
        termg = termg.mul(x3).div_f64(denom);
        kg += 1;
        g = g.add(termg);
        if x != 0.0 {
            gp = gp.add(termg.mul_f64((3 * kg + 1) as f64).div_f64(x));
        }
        if termg.abs() < 1e-40 * g.abs().max(1.0) || kg > 200 {
            break;
        }
    }
    (f, g, fp, gp)
}

/// Asymptotic coefficients u_k (DLMF 9.7.2): u_0 = 1,
/// u_k = u_{k-1} (6k-5)(6k-1) / (72k); v_k = u_k (6k+1)/(1-6k).
#[inline]
fn next_u(u_prev: f64, k: usize) -> f64 {
    let kf = k as f64;
    u_prev * (6.0 * kf - 5.0) * (6.0 * kf - 1.0) / (72.0 * kf)
}

/// Ai and Ai' for x > SERIES_LIMIT.
fn ai_asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    if zeta > 740.0 {
        return (0.0, 0.0);
    }
    let pref = (-zeta).exp() / (2.0 * PI.sqrt());
    let mut su = 1.0;
    let mut sv = 1.0;
    let mut u = 1.0;
    let mut pow = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..40 {
        u = next_u(u, k);
        pow *= -1.0 / zeta;
        let tu = u * pow;
        if tu.abs() > last {
            break; // asymptotic series: stop at smallest term
        }
        last = tu.abs();
        su += tu;
        let v = u * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64);
        sv += v * pow;
        if tu.abs() < 1e-18 {
            break;
        }
    }
    let ai = pref * x.powf(-0.25) * su;
    let aip = -pref * x.powf(0.25) * sv;
    (ai, aip)
}

/// Ai(-z) and Ai'(-z) for z > SERIES_LIMIT (DLMF 9.7.9, 9.7.11).
fn ai_asymptotic_neg(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (mut p, mut q) = (1.0, 0.0);
    let (mut pv, mut qv) = (1.0, 0.0);
    let mut u = 1.0;
    let mut pow = 1.0;
    for k in 1..40 {
        u = next_u(u, k);
        pow /= zeta;
        let v = u * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64);
        let sgn = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let term = sgn * u * pow;
        let termv = sgn * v * pow;
        if k % 2 == 0 {
            p += term;
            pv += termv;
        } else {
            q += term;
            qv += termv;
        }
        if (u * pow).abs() < 1e-18 {
            break;
        }
    }
    let phase = zeta - PI / 4.0;
    let (s, c) = phase.sin_cos();
    let pref = 1.0 / (PI.sqrt() * z.powf(0.25));
    let ai = pref * (c * p + s * q);
    let aip = z.powf(0.25) / PI.sqrt() * (s * pv - c * qv);
    (ai, aip)
}

fn check_finite(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain(format!("non-finite argument {x}")));
    }
    Ok(())
}

/// Airy function Ai(x). Absolute error <= 1e-12 for |x| <= 20.
pub fn ai(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(ai_reference(x))
}

/// Derivative Ai'(x). Absolute error <= 1e-11 for |x| <= 20.
pub fn ai_deriv(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(ai_deriv_unchecked(x))
}

/// Chebyshev acceleration of the series range for the quadrature hot paths:
/// one Clenshaw pass instead of a double-double summation. Built once from
/// the reference series; absolute error below 1e-13.
fn cheb_ai() -> &'static [f64] {
    use std::sync::OnceLock;
    static CHEB: OnceLock<Vec<f64>> = OnceLock::new();
    CHEB.get_or_init(|| {
        const N: usize = 200;
        let vals: Vec<f64> = (0..N)
            .map(|j| {
                let u = (PI * (j as f64 + 0.5) / N as f64).cos();
                let x = SERIES_LIMIT * u;
                let (f, g, _, _) = basis_series(x);
                AI0.mul(f).add(AIP0.mul(g)).value()
            })
            .collect();
        let mut coef: Vec<f64> = (0..N)
            .map(|m| {
                let s: f64 = (0..N)
                    .map(|j| vals[j] * (PI * m as f64 * (j as f64 + 0.5) / N as f64).cos())
                    .sum();
                s * if m == 0 { 1.0 } else { 2.0 } / N as f64
            })
            .collect();
        while coef.len() > 8 && coef.last().unwrap().abs() < 1e-16 {
            coef.pop();
        }
        coef
    })
}

pub(crate) fn ai_unchecked(x: f64) -> f64 {
    if x.abs() <= SERIES_LIMIT {
        let coef = cheb_ai();
        let u = x / SERIES_LIMIT;
        let u2 = 2.0 * u;
        let (mut b1, mut b2) = (0.0f64, 0.0f64);
        for &c in coef.iter().skip(1).rev() {
            let b0 = c + u2 * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        coef[0] + u * b1 - b2
    } else if x > 0.0 {
        ai_asymptotic_pos(x).0
    } else {
        ai_asymptotic_neg(-x).0
    }
}

/// Reference evaluation (double-double series / asymptotics).
pub(crate) fn ai_reference(x: f64) -> f64 {
    if x.abs() <= SERIES_LIMIT {
        let (f, g, _, _) = basis_series(x);
        AI0.mul(f).add(AIP0.mul(g)).value()
    } else if x > 0.0 {
        ai_asymptotic_pos(x).0
    } else {
        ai_asymptotic_neg(-x).0
    }
}

pub(crate) fn ai_deriv_unchecked(x: f64) -> f64 {
    if x.abs() <= SERIES_LIMIT {
        let (_, _, fp, gp) = basis_series(x);
        AI0.mul(fp).add(AIP0.mul(gp)).value()
    } else if x > 0.0 {
        ai_asymptotic_pos(x).1
    } else {
        ai_asymptotic_neg(-x).1
    }
}

/// Both Ai and Ai' in one pass (shared series / asymptotic work).
pub(crate) fn ai_pair(x: f64) -> (f64, f64) {
    if x.abs() <= SERIES_LIMIT {
        let (f, g, fp, gp) = basis_series(x);
        (
            AI0.mul(f).add(AIP0.mul(g)).value(),
            AI0.mul(fp).add(AIP0.mul(gp)).value(),
        )
    } else if x > 0.0 {
        ai_asymptotic_pos(x)
    } else {
        ai_asymptotic_neg(-x)
    }
}

/// Validated range for the public rotated-ray evaluations.
const ROTATED_RANGE: f64 = 50.0;

/// A_+(z) = e^{-iπ/3} Ai(e^{-iπ/3} z) for real z, |z| <= 50.
pub fn a_plus(z: f64) -> Result<Complex64> {
    check_finite(z)?;
    if z.abs() > ROTATED_RANGE {
        return Err(Error::Argument(format!(
            "|z| = {} outside validated range {ROTATED_RANGE} for rotated-ray evaluation",
            z.abs()
        )));
    }
    Ok(a_plus_unchecked(z))
}

/// A_-(z) = e^{+iπ/3} Ai(e^{+iπ/3} z); conjugate of A_+(z) for real z.
pub fn a_minus(z: f64) -> Result<Complex64> {
    Ok(a_plus(z)?.conj())
}

/// Unit phases e^{-iπ/3}, e^{-2iπ/3}.
const ROT1: Complex64 = Complex64 {
    re: 0.5,
    im: -0.866_025_403_784_438_6,
};
const ROT2: Complex64 = Complex64 {
    re: -0.5,
    im: -0.866_025_403_784_438_6,
};

/// A_+ via the real basis series: the cube (e^{-iπ/3} z)^3 = -z^3 is real,
/// so f(e^{-iπ/3}z) = f(-z) and g(e^{-iπ/3}z) = -e^{-iπ/3} g(-z).
pub(crate) fn a_plus_unchecked(z: f64) -> Complex64 {
    if z.abs() <= SERIES_LIMIT {
        let (f, g, _, _) = basis_series(-z);
        // A_+ = c1 f(-z) e^{-iπ/3} - c2 g(-z) e^{-2iπ/3}
        ROT1 * (AI0.mul(f).value()) - ROT2 * (AIP0.mul(g).value())
    } else if z > 0.0 {
        a_plus_asymptotic(z).0
    } else {
        // negative z: e^{-iπ/3} z points into the growth sector; use the
        // real connection A_+ = (Ai(-z) ∓ ...) via Ai and Bi would be
        // needed. All call sites keep z >= -9; evaluate by series above.
        // Falls back to the series even past the switch (accuracy degrades
        // slowly; |z| <= 50 keeps dd rounding ~1e-9 absolute of a huge value).
        let (f, g, _, _) = basis_series(-z);
        ROT1 * (AI0.mul(f).value()) - ROT2 * (AIP0.mul(g).value())
    }
}

/// (A_+(z), A_+'(z)) in the oscillatory asymptotic regime z > SERIES_LIMIT:
/// A_+(z) = z^{-1/4}/(2√π) e^{i(ζ-π/4)} Σ (-i)^j u_j ζ^{-j}.
fn a_plus_asymptotic(z: f64) -> (Complex64, Complex64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0); // d/dζ of the series
    let mut u = 1.0;
    let mut pow = Complex64::new(1.0, 0.0);
    let minus_i_over_zeta = Complex64::new(0.0, -1.0 / zeta);
    for j in 1..30 {
        u = next_u(u, j);
        pow *= minus_i_over_zeta;
        let term = pow * u;
        sum += term;
        dsum += term * (-(j as f64) / zeta);
        if term.norm() < 1e-18 {
            break;
        }
    }
    let phase = Complex64::from_polar(1.0, zeta - PI / 4.0);
    let pref = z.powf(-0.25) / (2.0 * PI.sqrt());
    let a = pref * phase * sum;
    // logarithmic derivative: A'/A = -1/(4z) + i√z + (dΣ/dζ)·ζ'/Σ, ζ' = √z
    let logd = Complex64::new(-0.25 / z, z.sqrt()) + dsum * z.sqrt() / sum;
    (a, a * logd)
}

/// Logarithmic-derivative data for the phase function: (A_+, A_+').
pub(crate) fn a_plus_with_deriv(z: f64) -> (Complex64, Complex64) {
    if z.abs() <= SERIES_LIMIT || z < 0.0 {
        let (f, g, fp, gp) = basis_series(-z);
        let a = ROT1 * (AI0.mul(f).value()) - ROT2 * (AIP0.mul(g).value());
        // d/dz: f'(e^{-iπ/3}z) chain = -e^{-iπ/3} f'(-z) rotated; assembled:
        // A_+' = -c1 e^{-iπ/3} f'(-z) + c2 e^{-2iπ/3} g'(-z)
        let ap = -ROT1 * (AI0.mul(fp).value()) + ROT2 * (AIP0.mul(gp).value());
        (a, ap)
    } else {
        a_plus_asymptotic(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 50-digit arithmetic (mpmath).
    const AI_REFS: &[(f64, f64, f64)] = &[
        (0.5, 0.23169360648083348977, -0.22491053266468389314),
        (1.0, 0.13529241631288141552, -0.15914744129679321279),
        (2.0, 0.034924130423274379135, -0.053090384433653631704),
        (4.0, 0.00095156385120480187362, -0.0019586409502041789001),
        (5.5, 3.3685311908599814425e-5, -8.046339130556514338e-5),
        (6.0, 9.9476943602528895702e-6, -2.4765200397034954754e-5),
        (8.0, 4.6922076160992316256e-8, -1.3414392979067865743e-7),
        (9.0, 2.4711684308724898433e-9, -7.4806413896589464128e-9),
        (10.0, 1.1047532552898685934e-10, -3.5206336767389236366e-10),
        (12.0, 1.393184688875360839e-13, -4.854736554985308463e-13),
        (15.0, 2.164962520737992299e-18, -8.4205679540177727661e-18),
        (20.0, 1.6916728686705403136e-27, -7.5863916257483549605e-27),
        (-1.0, 0.5355608832923521188, -0.010160567116645209395),
        (-2.5, -0.11232506769296608919, 0.67885273426479436337),
        (-5.0, 0.35076100902411431979, 0.32719281855444313679),
        (-6.0, -0.32914517362982310523, 0.34593548728134289493),
        (-8.0, -0.052705050356386202622, 0.93556093819830655103),
        (-9.0, -0.022133721547341403674, -0.97566398092633159471),
        (-10.0, 0.040241238486443190689, 0.9962650441327900559),
        (-12.0, -0.066555175054373129474, 1.0231104533679707299),
        (-15.0, 0.27821749087082892953, 0.27237420430864202083),
        (-20.0, -0.17640612707798468959, 0.8928628567364712384),
        (-33.0, 0.23482951883019735691, -0.09182345301164598261),
        (-50.0, -0.16188142361232092392, 0.96898983727674908714),
        (-120.0, -0.10139729484759988448, 1.5008353315366543117),
        (-300.0, 0.038726362905137907187, 2.2502255138380941113),
    ];

    #[test]
    fn ai_matches_reference_to_1e12() {
        for &(x, want, _) in AI_REFS {
            let got = ai(x).unwrap();
            assert!(
                (got - want).abs() <= 1e-12,
                "ai({x}) = {got:e}, want {want:e}, err {:e}",
                (got - want).abs()
            );
        }
    }

    #[test]
    fn ai_deriv_matches_reference_to_1e11() {
        for &(x, _, want) in AI_REFS {
            let got = ai_deriv(x).unwrap();
            assert!(
                (got - want).abs() <= 1e-11,
                "ai'({x}) = {got:e}, want {want:e}, err {:e}",
                (got - want).abs()
            );
        }
    }

    #[test]
    fn ai_at_zero_gamma_identity() {
        // 1/(3^{2/3} Γ(2/3)) and -1/(3^{1/3} Γ(1/3))
        assert!((ai(0.0).unwrap() - 0.3550280538878172).abs() < 1e-15);
        assert!((ai_deriv(0.0).unwrap() + 0.2588194037928068).abs() < 1e-15);
    }

    #[test]
    fn ai_positive_tail_small() {
        let v = ai(10.0).unwrap();
        assert!(v > 0.0 && v < 1e-9);
    }

    #[test]
    fn non_finite_input_rejected() {
        assert!(ai(f64::NAN).is_err());
        assert!(ai(f64::INFINITY).is_err());
        assert!(ai_deriv(f64::NAN).is_err());
    }

    #[test]
    fn series_asymptotic_cross_validation_band() {
        // both evaluation branches agree to 1e-10 across the hand-over band
        for i in 0..=20 {
            let x = 8.5 + 0.05 * i as f64;
            let (f, g, _, _) = basis_series(x);
            let ser = AI0.mul(f).add(AIP0.mul(g)).value();
            let asy = ai_asymptotic_pos(x).0;
            assert!(
                (ser - asy).abs() < 1e-10,
                "band mismatch at +{x}: {ser:e} vs {asy:e}"
            );
            let (fn_, gn, _, _) = basis_series(-x);
            let ser_n = AI0.mul(fn_).add(AIP0.mul(gn)).value();
            let asy_n = ai_asymptotic_neg(x).0;
            assert!(
                (ser_n - asy_n).abs() < 1e-10,
                "band mismatch at -{x}: {ser_n:e} vs {asy_n:e}"
            );
        }
    }

    #[test]
    fn a_plus_reference_values() {
        // mpmath: A_+(z) = e^{-iπ/3} Ai(e^{-iπ/3} z)
        let refs: &[(f64, f64, f64)] = &[
            (0.0, 0.17751402694390862, -0.307463313723000368),
            (1.0, 0.267780441646176059, -0.0519986947484723059),
            (5.0, 0.17538050451205716, 0.0691845674508002884),
            (8.5, -0.16514511881510444, -0.00387721822382920222),
            (9.5, 0.159551623859564101, -0.0188927162447332511),
            (11.0, -0.00437979462785119064, -0.154827383713390943),
            (20.0, -0.0882030635389923448, 0.100069654661325675),
            (50.0, -0.080940711806160462, 0.0685750760644100367),
        ];
        for &(z, re, im) in refs {
            let got = a_plus(z).unwrap();
            assert!(
                (got.re - re).abs() < 2e-9 && (got.im - im).abs() < 2e-9,
                "A_+({z}) = {got}, want {re}+{im}i"
            );
        }
    }

    #[test]
    fn a_plus_sum_identity() {
        // Ai(-z) = A_+(z) + A_-(z)
        for &z in &[0.0, 1.0, 5.0, 9.2, 15.0, 33.0] {
            let s = a_plus(z).unwrap() + a_minus(z).unwrap();
            let want = ai(-z).unwrap();
            assert!((s.re - want).abs() < 1e-9, "sum identity at {z}");
            assert!(s.im.abs() < 1e-12);
        }
    }

    #[test]
    fn a_plus_leading_modulus() {
        // |A_+(z)| ~ z^{-1/4}/(2√π); 5% at z = 5
        let want = 5f64.powf(-0.25) / (2.0 * PI.sqrt());
        let got = a_plus(5.0).unwrap().norm();
        assert!((got / want - 1.0).abs() < 0.05, "got {got}, leading {want}");
    }

    #[test]
    fn a_plus_range_error() {
        assert!(a_plus(51.0).is_err());
        assert!(a_plus(-51.0).is_err());
    }

    #[test]
    fn chebyshev_fast_path_matches_reference() {
        let mut worst: f64 = 0.0;
        for i in 0..=2000 {
            let x = -10.0 + 20.0 * i as f64 / 2000.0;
            worst = worst.max((ai_unchecked(x) - ai_reference(x)).abs());
        }
        assert!(worst < 2e-13, "fast-path error {worst:e}");
    }

    #[test]
    fn a_plus_deriv_consistent_with_finite_difference() {
        for &z in &[0.5, 3.0, 7.0, 12.0, 25.0] {
            let (_, d) = a_plus_with_deriv(z);
            let h = 1e-6;
            let fd = (a_plus_unchecked(z + h) - a_plus_unchecked(z - h)) / (2.0 * h);
            assert!(
                (d - fd).norm() < 1e-4 * d.norm().max(1.0),
                "A_+' at {z}: {d} vs fd {fd}"
            );
        }
    }
}
