//! Parametrized SL(2) representations of two-generator groups over Q(x, y, r).
//!
//! Generators act by 2x2 matrices whose entries are rational functions. A
//! relator split as `w1 * w2` is imposed through the residual
//! `w1 - w2^-1`, which vanishes exactly when the relator maps to the identity.

mod numeric;
mod pipeline;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::poly::{vars_of, MultiPoly, RationalFunction, Vars};
use crate::scalar::Ring;
use crate::word::GroupWord;

pub use numeric::{numeric_check, residual_magnitude, NumericReport, ResidualNorm, R0_REFERENCE, X0_REFERENCE};
pub use pipeline::{
    fixture, gamma4_pipeline, trace_identity_holds, trace_polynomial, Gamma4Fixture, PipelineError, RigidityCertificate, Stage,
};

type Q = MultiPoly<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("generator '{0}' has no assigned matrix")]
    Unassigned(String),
    #[error("matrix assigned to '{0}' does not have determinant 1")]
    NotUnimodular(String),
    #[error("split index {index} is outside 0..={len}")]
    InvalidSplit { index: usize, len: usize },
    #[error("no entry is linear in '{0}'")]
    NotLinear(String),
    #[error("'{0}' does not occur")]
    MissingParameter(String),
    #[error("substitution produced a pole")]
    Pole,
}

/// Row-major 2x2 matrix `[a11, a12, a21, a22]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2<E>(pub [E; 4]);

impl<E: Ring> Mat2<E> {
    pub fn new(a11: E, a12: E, a21: E, a22: E) -> Self {
        Mat2([a11, a12, a21, a22])
    }

    pub fn identity() -> Self {
        Mat2([E::one(), E::zero(), E::zero(), E::one()])
    }

    pub fn zero() -> Self {
        Mat2([E::zero(), E::zero(), E::zero(), E::zero()])
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &E {
        &self.0[2 * row + col]
    }

    pub fn entries(&self) -> &[E; 4] {
        &self.0
    }

    pub fn det(&self) -> E {
        let [a, b, c, d] = self.0.clone();
        a * d - b * c
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    /// Adjugate; the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        let [a, b, c, d] = self.0.clone();
        Mat2([d, -b, -c, a])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        let dot = |p: &E, q: &E, r: &E, s: &E| p.clone() * q.clone() + r.clone() * s.clone();
        Mat2([dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)])
    }

    pub fn sub(&self, o: &Self) -> Self {
        let [a, b, c, d] = self.0.clone();
        let [e, f, g, h] = o.0.clone();
        Mat2([a - e, b - f, c - g, d - h])
    }

    pub fn map<F: Ring>(&self, f: impl Fn(&E) -> F) -> Mat2<F> {
        Mat2([f(&self.0[0]), f(&self.0[1]), f(&self.0[2]), f(&self.0[3])])
    }

    pub fn trace(&self) -> E {
        self.0[0].clone() + self.0[3].clone()
    }
}

impl<E: fmt::Display> fmt::Display for Mat2<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl<E: fmt::Display> fmt::Debug for Mat2<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2{self}")
    }
}

/// Generator name to matrix.
pub type Assignment<E> = BTreeMap<String, Mat2<E>>;

/// The variables `x, y, r` of the standard parametrization.
pub fn standard_vars() -> Vars {
    vars_of(&["x", "y", "r"])
}

fn rf(text: &str, vars: &[&str]) -> RationalFunction {
    RationalFunction::parse(text, vars).expect("well-formed literal")
}

/// `a -> [[x, 1], [0, 1/x]]`, `b -> [[y, 0], [r, 1/y]]`: `a` fixes infinity
/// and `b` fixes 0, which is the generic position for an irreducible pair.
pub fn standard_assignment() -> Assignment<RationalFunction> {
    let v = ["x", "y", "r"];
    let mut m = Assignment::new();
    m.insert("a".into(), Mat2::new(rf("x", &v), rf("1", &v), rf("0", &v), rf("(1)/(x)", &v)));
    m.insert("b".into(), Mat2::new(rf("y", &v), rf("0", &v), rf("r", &v), rf("(1)/(y)", &v)));
    m
}

/// Substitutes `value` for `param` in every entry of every matrix.
pub fn substitute_assignment(
    a: &Assignment<RationalFunction>,
    param: &str,
    value: &RationalFunction,
) -> Result<Assignment<RationalFunction>, RepError> {
    let mut out = Assignment::new();
    for (g, m) in a {
        let mut e = m.0.clone();
        for x in e.iter_mut() {
            *x = x.substitute(param, value).ok_or(RepError::Pole)?;
        }
        out.insert(g.clone(), Mat2(e));
    }
    Ok(out)
}

/// Exact image of `w`. Inverses use the adjugate, so every matrix that `w`
/// mentions must have determinant exactly 1.
pub fn eval_word<E: Ring>(w: &GroupWord, assignment: &Assignment<E>) -> Result<Mat2<E>, RepError> {
    let mut inverses: BTreeMap<&str, Mat2<E>> = BTreeMap::new();
    for g in w.generators() {
        let m = assignment.get(g).ok_or_else(|| RepError::Unassigned(g.to_string()))?;
        if !(m.det() - E::one()).is_zero() {
            return Err(RepError::NotUnimodular(g.to_string()));
        }
        inverses.insert(g, m.adjugate());
    }
    let mut acc = Mat2::identity();
    for (g, e) in w.syllables() {
        let m = if *e > 0 { &assignment[g] } else { &inverses[g.as_str()] };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(m);
        }
    }
    Ok(acc)
}

/// `w1 - w2^-1` for a relator split as `w1 * w2`, with its entry numerators
/// and denominators (denominators integer-primitive, positive leading term).
#[derive(Clone, Debug)]
pub struct ResidualMatrix {
    pub matrix: Mat2<RationalFunction>,
    pub numerators: [Q; 4],
    pub denominators: [Q; 4],
}

impl ResidualMatrix {
    fn from_matrix(matrix: Mat2<RationalFunction>) -> Self {
        let numerators = matrix.0.clone().map(|e| e.num().clone());
        let denominators = matrix.0.clone().map(|e| e.den().clone());
        ResidualMatrix { matrix, numerators, denominators }
    }

    /// Numerator of the 0-based `(row, col)` entry.
    pub fn numerator(&self, row: usize, col: usize) -> &Q {
        &self.numerators[2 * row + col]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Applies a substitution entrywise.
    pub fn substitute(&self, param: &str, value: &RationalFunction) -> Result<Self, RepError> {
        let mut e = self.matrix.0.clone();
        for x in e.iter_mut() {
            *x = x.substitute(param, value).ok_or(RepError::Pole)?;
        }
        Ok(Self::from_matrix(Mat2(e)))
    }
}

/// Residual of `relator` split after `split` letters.
pub fn relation_residual(
    relator: &GroupWord,
    split: usize,
    assignment: &Assignment<RationalFunction>,
) -> Result<ResidualMatrix, RepError> {
    let (w1, w2) = relator
        .split_at(split)
        .ok_or(RepError::InvalidSplit { index: split, len: relator.len() })?;
    let m1 = eval_word(&w1, assignment)?;
    let m2 = eval_word(&w2, assignment)?;
    Ok(ResidualMatrix::from_matrix(m1.sub(&m2.adjugate())))
}

/// Root of a numerator that is linear in `param`.
pub fn solve_linear(numerator: &Q, param: &str) -> Result<RationalFunction, RepError> {
    let v = numerator.var_index(param).ok_or_else(|| RepError::MissingParameter(param.to_string()))?;
    match numerator.degree_in(v) {
        Some(1) => {}
        Some(0) | None => return Err(RepError::MissingParameter(param.to_string())),
        Some(_) => return Err(RepError::NotLinear(param.to_string())),
    }
    let c = numerator.coefficients_in(v);
    RationalFunction::new(-&c[0], c[1].clone()).ok_or_else(|| RepError::NotLinear(param.to_string()))
}

/// Solves the first entry numerator (row-major) that has degree exactly 1
/// in `param`. Returns the entry position and the solution.
pub fn solve_linear_parameter(
    residual: &ResidualMatrix,
    param: &str,
) -> Result<((usize, usize), RationalFunction), RepError> {
    let mut seen = false;
    for (k, n) in residual.numerators.iter().enumerate() {
        let Some(v) = n.var_index(param) else { continue };
        match n.degree_in(v) {
            Some(1) => return Ok(((k / 2, k % 2), solve_linear(n, param)?)),
            Some(d) if d > 1 => seen = true,
            _ => {}
        }
    }
    if seen {
        Err(RepError::NotLinear(param.to_string()))
    } else {
        Err(RepError::MissingParameter(param.to_string()))
    }
}

impl Mat2<RationalFunction> {
    /// All entries over the common variable list `vars`.
    pub fn with_vars(&self, vars: &Vars) -> Option<Self> {
        let e = &self.0;
        Some(Mat2([e[0].with_vars(vars)?, e[1].with_vars(vars)?, e[2].with_vars(vars)?, e[3].with_vars(vars)?]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn trivial_words() {
        let a = standard_assignment();
        assert_eq!(eval_word(&GroupWord::identity(), &a).unwrap(), Mat2::identity());
        assert_eq!(eval_word(&w("a A"), &a).unwrap(), Mat2::identity());
        let m = eval_word(&w("a"), &a).unwrap();
        assert_eq!(m, a["a"]);
        assert_eq!(m.to_string(), "[[x, 1], [0, (1)/(x)]]");
    }

    #[test]
    fn errors() {
        let a = standard_assignment();
        assert_eq!(eval_word(&w("c"), &a), Err(RepError::Unassigned("c".into())));
        let mut bad = a.clone();
        bad.insert("c".into(), Mat2::new(rf("2", &["x"]), rf("0", &["x"]), rf("0", &["x"]), rf("1", &["x"])));
        assert_eq!(eval_word(&w("a c"), &bad), Err(RepError::NotUnimodular("c".into())));
        assert!(matches!(relation_residual(&w("a b"), 3, &a), Err(RepError::InvalidSplit { .. })));
    }

    #[test]
    fn inverse_pair_residual_vanishes() {
        let a = standard_assignment();
        let res = relation_residual(&w("a b B A"), 0, &a).unwrap();
        assert!(res.is_zero());
        let res = relation_residual(&w("a b a"), 1, &a).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn linear_solve() {
        let n = MultiPoly::parse("r*x - 1", &["x", "y", "r"]).unwrap();
        assert_eq!(solve_linear(&n, "r").unwrap(), rf("(1)/(x)", &["x", "y", "r"]));
        let m = MultiPoly::parse("x - 1", &["x", "y", "r"]).unwrap();
        assert_eq!(solve_linear(&m, "r"), Err(RepError::MissingParameter("r".into())));
        let q = MultiPoly::parse("r^2*x - 1", &["x", "y", "r"]).unwrap();
        assert_eq!(solve_linear(&q, "r"), Err(RepError::NotLinear("r".into())));
    }
}
