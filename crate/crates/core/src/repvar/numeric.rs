//! High-precision verification of a certificate at an explicit complex point.
//!
//! Points are Newton-refined roots held as exact complex rationals, so the
//! generator matrices have determinant exactly 1 and the only error in a
//! residual comes from the distance between the rounded point and the true
//! root.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{eval_word, Assignment, Mat2, RigidityCertificate};
use crate::poly::{RationalFunction, UniPoly};
use crate::scalar::{complex_to_decimal, log10_abs, norm_sqr, rational_from_decimal, round_complex};
use crate::word::GroupWord;

type C = Complex<BigRational>;
type QU = UniPoly<BigRational>;

/// Reference approximations: a root of the x-polynomial and the matching
/// value of `r` when `y` is its complex conjugate.
pub const X0_REFERENCE: (&str, &str) = ("0.14840294359835", "-0.632502179219");
pub const R0_REFERENCE: (&str, &str) = ("-2.29128784747792", "0.8660254037844386467");

/// Largest entry of one residual, as `log10 |entry|` (`None` for exact zero).
#[derive(Debug, Clone, Serialize)]
pub struct ResidualNorm {
    pub relator: String,
    pub split: usize,
    pub max_log10: Option<f64>,
    pub worst_entry: (usize, usize),
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub precision: u32,
    pub working_bits: u32,
    pub x0: String,
    pub y0: String,
    pub r0: String,
    /// `log10 |r0 - reference|`.
    pub r0_reference_error_log10: Option<f64>,
    pub r0_matches_reference: bool,
    /// `log10 |r_poly(r0)|`.
    pub r_poly_value_log10: Option<f64>,
    pub residuals: Vec<ResidualNorm>,
    /// First-relator residuals at `x = y = x0`, one per root of the
    /// r-polynomial and one for the `r` solving the linear entry.
    pub diagonal_cases: Vec<(String, ResidualNorm)>,
    pub diagonal_has_no_representation: bool,
    pub passed: bool,
    pub failure: Option<String>,
}

fn c(re: &str, im: &str) -> C {
    Complex::new(rational_from_decimal(re).expect("decimal"), rational_from_decimal(im).expect("decimal"))
}

fn horner(p: &QU, z: &C) -> C {
    p.eval_with(z, |q| Complex::new(q.clone(), BigRational::zero()))
}

/// Newton iteration from `start`, rounding to `bits` after every step.
pub(crate) fn newton(p: &QU, start: &C, bits: u32) -> C {
    let dp = p.derivative();
    let eps = BigRational::new(1.into(), num_bigint::BigInt::one() << (2 * bits - 4));
    let mut z = round_complex(start, bits);
    for _ in 0..200 {
        let d = horner(&dp, &z);
        if d.is_zero() {
            break;
        }
        let step = horner(p, &z) / d;
        z = round_complex(&(z - step.clone()), bits);
        if norm_sqr(&step) < eps {
            break;
        }
    }
    z
}

/// All complex roots: Durand-Kerner in `f64`, then Newton at `bits`.
pub(crate) fn complex_roots(p: &QU, bits: u32) -> Vec<C> {
    use num_traits::ToPrimitive;
    let n = p.deg();
    let lc = p.leading_coeff();
    let coeffs: Vec<Complex<f64>> =
        p.coeffs().iter().map(|c| Complex::new((c / &lc).to_f64().unwrap_or(0.0), 0.0)).collect();
    let eval = |z: Complex<f64>| coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex<f64>> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let delta = eval(roots[i]) / den;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots
        .into_iter()
        .map(|z| {
            let start = Complex::new(crate::scalar::rational_from_f64(z.re), crate::scalar::rational_from_f64(z.im));
            newton(p, &start, bits)
        })
        .collect()
}

fn eval_named(f: &RationalFunction, values: &[(&str, &C)]) -> Option<C> {
    let point: Vec<C> = f
        .vars()
        .iter()
        .map(|v| values.iter().find(|(n, _)| n == v).map(|(_, z)| (*z).clone()).unwrap_or_else(C::zero))
        .collect();
    f.eval(&point)
}

fn assignment(x: &C, y: &C, r: &C) -> Option<Assignment<C>> {
    let one = C::one();
    let zero = C::zero();
    if x.is_zero() || y.is_zero() {
        return None;
    }
    let mut m = Assignment::new();
    m.insert("a".into(), Mat2::new(x.clone(), one.clone(), zero.clone(), one.clone() / x.clone()));
    m.insert("b".into(), Mat2::new(y.clone(), zero, r.clone(), one / y.clone()));
    Some(m)
}

fn residual_norm(relator: &GroupWord, split: usize, a: &Assignment<C>, tol_sq: &BigRational) -> ResidualNorm {
    let (w1, w2) = relator.split_at(split).expect("certificate splits are valid");
    let m1 = eval_word(&w1, a).expect("unimodular assignment");
    let m2 = eval_word(&w2, a).expect("unimodular assignment");
    let d = m1.sub(&m2.adjugate());
    let norms: Vec<BigRational> = d.0.iter().map(norm_sqr).collect();
    let (k, worst) = norms.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).expect("four entries");
    ResidualNorm {
        relator: relator.to_string(),
        split,
        max_log10: log10_abs(worst).map(|l| l / 2.0),
        worst_entry: (k / 2, k % 2),
        within_tolerance: worst < tol_sq,
    }
}

/// Verifies the certificate at the reference root with `precision` decimal
/// digits of tolerance: both residuals must be below `10^-precision`, the
/// solved `r` must agree with the reference value, and the diagonal point
/// `x = y = x0` must not give a representation.
pub fn numeric_check(cert: &RigidityCertificate, precision: u32) -> NumericReport {
    let digits = 2 * precision + 20;
    let working_bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
    let tol_sq = BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 2 * precision as usize));
    let shown = precision as usize;

    let x0 = newton(&cert.x_poly, &c(X0_REFERENCE.0, X0_REFERENCE.1), working_bits);
    let y0 = x0.conj();
    let mut failure = None;
    let r0 = match eval_named(&cert.r_solution, &[("x", &x0), ("y", &y0)]) {
        Some(r) => round_complex(&r, working_bits),
        None => {
            failure = Some("solved r has a pole at (x0, conj(x0))".to_string());
            C::zero()
        }
    };
    let r_ref = c(R0_REFERENCE.0, R0_REFERENCE.1);
    let r0_err = log10_abs(&norm_sqr(&(r0.clone() - r_ref))).map(|l| l / 2.0);
    // The reference real part has 15 significant digits.
    let r0_matches_reference = r0_err.is_some_and(|e| e < -12.0);
    let r_poly_value_log10 =
        log10_abs(&norm_sqr(&horner(&cert.r_poly.with_var("r"), &r0))).map(|l| l / 2.0);

    let mut residuals = Vec::new();
    if let Some(a) = assignment(&x0, &y0, &r0) {
        residuals.push(residual_norm(&cert.relator1, cert.split1, &a, &tol_sq));
        residuals.push(residual_norm(&cert.relator2, cert.split2, &a, &tol_sq));
    }
    if failure.is_none() {
        if let Some(bad) = residuals.iter().find(|r| !r.within_tolerance) {
            failure = Some(format!(
                "residual of {} has entry {:?} of size 10^{:.1}",
                bad.relator,
                bad.worst_entry,
                bad.max_log10.unwrap_or(f64::NEG_INFINITY)
            ));
        }
    }
    if failure.is_none() && !r0_matches_reference {
        failure = Some("solved r differs from the reference value".into());
    }

    // x = y = x0: neither a root of the r-polynomial nor the linear solution
    // makes the first residual vanish.
    let mut diagonal_cases = Vec::new();
    let mut candidates: Vec<(String, C)> = complex_roots(&cert.r_poly, working_bits)
        .into_iter()
        .map(|r| (format!("r-polynomial root {}", complex_to_decimal(&r, 12)), r))
        .collect();
    if let Some(r) = eval_named(&cert.r_solution, &[("x", &x0), ("y", &x0)]) {
        candidates.push((format!("linear solution {}", complex_to_decimal(&r, 12)), round_complex(&r, working_bits)));
    }
    for (label, r) in candidates {
        if let Some(a) = assignment(&x0, &x0, &r) {
            diagonal_cases.push((label, residual_norm(&cert.relator1, cert.split1, &a, &tol_sq)));
        }
    }
    let diagonal_has_no_representation = !diagonal_cases.is_empty() && diagonal_cases.iter().all(|(_, r)| !r.within_tolerance);
    if failure.is_none() && !diagonal_has_no_representation {
        failure = Some("x = y = x0 admits a vanishing first residual".into());
    }

    NumericReport {
        precision,
        working_bits,
        x0: complex_to_decimal(&x0, shown),
        y0: complex_to_decimal(&y0, shown),
        r0: complex_to_decimal(&r0, shown),
        r0_reference_error_log10: r0_err,
        r0_matches_reference,
        r_poly_value_log10,
        residuals,
        diagonal_cases,
        diagonal_has_no_representation,
        passed: failure.is_none(),
        failure,
    }
}

/// Largest residual entry of `relator` at an arbitrary point, as
/// `log10 |entry|`; `None` when it vanishes exactly.
pub fn residual_magnitude(relator: &GroupWord, split: usize, x: &C, y: &C, r: &C) -> Option<f64> {
    let a = assignment(x, y, r)?;
    let zero = BigRational::zero();
    residual_norm(relator, split, &a, &zero).max_log10
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_a_quartic() {
        let p = QU::parse("x^4 - 9*x^2 + 36", "x").unwrap();
        let roots = complex_roots(&p, 200);
        assert_eq!(roots.len(), 4);
        for z in &roots {
            let v = norm_sqr(&horner(&p, z));
            assert!(log10_abs(&v).unwrap() < -100.0);
        }
    }

    #[test]
    fn generic_point_is_not_a_representation() {
        let w = GroupWord::parse("b a^-2 b a^-1 b^2 a b^2 a^-1").unwrap();
        let q = |v: i64| Complex::new(BigRational::from_integer(v.into()), BigRational::zero());
        let m = residual_magnitude(&w, 7, &q(2), &q(3), &q(1)).unwrap();
        assert!(m > -1.0);
    }
}
