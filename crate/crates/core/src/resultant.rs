//! Resultants via fraction-free elimination on the Sylvester matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{MultiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResultantError {
    #[error("variable '{0}' does not occur in the polynomial list")]
    UnknownVariable(String),
    #[error("polynomial has degree 0 in '{0}'")]
    DegreeZero(String),
}

type Z = MultiPoly<BigInt>;
type Q = MultiPoly<BigRational>;

/// `Res_var(f, g)`: the Sylvester determinant of `f` and `g` as polynomials
/// in `var` over the ring of the remaining variables.
pub fn resultant(f: &Q, g: &Q, var: &str) -> Result<Q, ResultantError> {
    let (f, g) = f.aligned(g);
    let v = f.var_index(var).ok_or_else(|| ResultantError::UnknownVariable(var.to_string()))?;
    let m = f.degree_in(v).unwrap_or(0) as usize;
    let n = g.degree_in(v).unwrap_or(0) as usize;
    if m == 0 || n == 0 {
        return Err(ResultantError::DegreeZero(var.to_string()));
    }
    // Res(f/a, g/b) = a^-n b^-m Res(f, g) for constants a, b.
    let (da, fz) = f.to_integer_poly();
    let (db, gz) = g.to_integer_poly();
    let det = sylvester_det(&fz.coefficients_in(v), &gz.coefficients_in(v), &fz);
    let scale = BigRational::new(BigInt::one(), num_traits::pow(da, n) * num_traits::pow(db, m));
    Ok(Q::from_integer_poly(&det).scale(&scale))
}

/// Resultant of univariate polynomials over Q.
pub fn resultant_uni(f: &UniPoly<BigRational>, g: &UniPoly<BigRational>) -> Result<BigRational, ResultantError> {
    let vars = crate::poly::vars_of(&[f.var()]);
    let fm = Q::from_uni(f, vars.clone()).expect("own variable");
    let gm = Q::from_uni(&g.with_var(f.var()), vars).expect("own variable");
    let r = resultant(&fm, &gm, f.var())?;
    Ok(r.constant_term())
}

/// Sylvester determinant for coefficient lists (low degree first).
fn sylvester_det(fc: &[Z], gc: &[Z], like: &Z) -> Z {
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let zero = Z::zero(like.vars().clone());
    let mut rows: Vec<Vec<Z>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in fc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in gc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss(rows, like)
}

/// Fraction-free determinant; every division is exact.
pub(crate) fn bareiss(mut a: Vec<Vec<Z>>, like: &Z) -> Z {
    let n = a.len();
    if n == 0 {
        return Z::one(like.vars().clone());
    }
    let mut sign = false;
    let mut prev = Z::one(like.vars().clone());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Pick the sparsest nonzero pivot below.
            let swap = (k + 1..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].num_terms());
            match swap {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Z::zero(like.vars().clone()),
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            let aik = a[i][k].clone();
            for j in k + 1..n {
                let t = &(&a[i][j] * &pivot) - &(&aik * &a[k][j]);
                a[i][j] = if t.is_zero() { t } else { t.div_exact(&prev).expect("Bareiss division is exact") };
            }
            a[i][k] = Z::zero(like.vars().clone());
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Resultant over Z of dense integer coefficient lists (low degree first).
pub fn resultant_int(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            a[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            a[n + i][i + j] = c.clone();
        }
    }
    let mat = crate::exact::IntMatrix::from_rows(a, size).expect("rectangular rows");
    mat.determinant().expect("square Sylvester matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Q {
        MultiPoly::parse(s, &["x", "a", "b"]).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(resultant(&q("x - a"), &q("x - b"), "x").unwrap(), q("a - b"));
        assert_eq!(resultant(&q("x^2 + 1"), &q("x - 1"), "x").unwrap(), q("2"));
        assert_eq!(resultant(&q("1/2*x^2 + 1"), &q("3*x - 3"), "x").unwrap(), q("27/2"));
        assert!(matches!(resultant(&q("a"), &q("x"), "x"), Err(ResultantError::DegreeZero(_))));
        assert!(resultant(&q("x"), &q("x"), "z").is_err());
    }

    #[test]
    fn discriminant_of_quadratic() {
        // For monic quadratics Res(f, f') = -disc.
        let f = q("x^2 + a*x + b");
        let df = q("2*x + a");
        assert_eq!(resultant(&f, &df, "x").unwrap(), q("-a^2 + 4*b"));
    }

    #[test]
    fn integer_version_agrees() {
        let f: Vec<BigInt> = [1, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        let g: Vec<BigInt> = [-1, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(resultant_int(&f, &g), BigInt::from(2));
    }
}
