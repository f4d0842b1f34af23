//! Elimination pipeline for the two-relator group
//! `<a, b | b a^-2 b a^-1 b^2 a b^2 a^-1, a^2 b a b^2 a b a^2 b^-1>`.
//!
//! Stages: solve the linear parameter `r` from the first relator, extract the
//! constraint `C(x, y)`, eliminate `y` against the second relator's entry
//! numerators, then recover the `y` and `r` polynomials by resultants.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{relation_residual, solve_linear_parameter, standard_assignment, substitute_assignment};
use crate::factor::irreducible_factors;
use crate::numfield::dickson_v;
use crate::poly::{MultiPoly, RationalFunction, UniPoly};
use crate::resultant::resultant;
use crate::word::GroupWord;

type Q = MultiPoly<BigRational>;
type QU = UniPoly<BigRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    FirstRelator,
    SolveParameter,
    Constraint,
    SecondRelator,
    EliminateY,
    XPolynomial,
    YPolynomials,
    RPolynomial,
    Character,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::FirstRelator => "first_relator",
            Stage::SolveParameter => "solve_parameter",
            Stage::Constraint => "constraint",
            Stage::SecondRelator => "second_relator",
            Stage::EliminateY => "eliminate_y",
            Stage::XPolynomial => "x_polynomial",
            Stage::YPolynomials => "y_polynomials",
            Stage::RPolynomial => "r_polynomial",
            Stage::Character => "character",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("stage {stage}: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub message: String,
}

fn fail<T>(stage: Stage, message: impl Into<String>) -> Result<T, PipelineError> {
    Err(PipelineError { stage, message: message.into() })
}

trait AtStage<T> {
    fn at(self, stage: Stage) -> Result<T, PipelineError>;
}

impl<T, E: fmt::Display> AtStage<T> for Result<T, E> {
    fn at(self, stage: Stage) -> Result<T, PipelineError> {
        self.map_err(|e| PipelineError { stage, message: e.to_string() })
    }
}

/// Fixed inputs: the relators, where each is split, and the factors that
/// are discarded during elimination.
#[derive(Debug, Clone)]
pub struct Gamma4Fixture {
    /// `(relator, letters in w1)`; the residual is `w1 - w2^-1`.
    pub relators: [(GroupWord, usize); 2],
    /// Discarded factors in `x`. A root of `x` is impossible since `x` is an
    /// eigenvalue. Roots of `x^2 + 1`, `x^2 + x + 1` and `x^2 - x + 1` make
    /// `a` of order 2 or 3 in PSL(2, C), and adding `a^2 = 1` or `a^3 = 1`
    /// to the presentation gives a finite group (checked by coset
    /// enumeration in the groups crate), so no irreducible representation
    /// with infinite image arises from them.
    pub spurious: Vec<QU>,
}

pub fn fixture() -> Gamma4Fixture {
    let w = |s: &str| GroupWord::parse(s).expect("fixture word");
    let u = |s: &str| QU::parse(s, "x").expect("fixture polynomial");
    Gamma4Fixture {
        relators: [(w("b a^-2 b a^-1 b^2 a b^2 a^-1"), 7), (w("a^2 b a b^2 a b a^2 b^-1"), 6)],
        spurious: vec![u("x"), u("x^2 + 1"), u("x^2 + x + 1"), u("x^2 - x + 1")],
    }
}

/// Result of the elimination. Every polynomial is stored integer-primitive
/// with positive leading coefficient; signs dropped on the way are recorded.
#[derive(Debug, Clone, Serialize)]
pub struct RigidityCertificate {
    #[serde(serialize_with = "text")]
    pub relator1: GroupWord,
    pub split1: usize,
    #[serde(serialize_with = "text")]
    pub relator2: GroupWord,
    pub split2: usize,
    /// Entry numerators of the first residual, row-major, primitive.
    #[serde(serialize_with = "text_list")]
    pub r_numerators: Vec<Q>,
    /// Sign of each raw numerator relative to its primitive form.
    pub r_numerator_signs: Vec<i8>,
    /// Entry `(row, col)` (0-based) used to solve for `r`.
    pub solved_from: (usize, usize),
    #[serde(serialize_with = "text")]
    pub r_solution: RationalFunction,
    #[serde(serialize_with = "text")]
    pub constraint: Q,
    /// Spurious factors divided out of the constraint entry, with multiplicity.
    #[serde(serialize_with = "text_pairs")]
    pub constraint_cofactors: Vec<(QU, u32)>,
    #[serde(serialize_with = "text_list")]
    pub s_numerators: Vec<Q>,
    pub s_numerator_signs: Vec<i8>,
    #[serde(serialize_with = "text_list")]
    pub s_denominators: Vec<Q>,
    /// `Res_y(C, s_i)` for each `i`, as factorizations.
    pub x_eliminants: Vec<Eliminant>,
    /// Squarefree part of the gcd of the `x` eliminants.
    #[serde(serialize_with = "text")]
    pub x_gcd: QU,
    #[serde(serialize_with = "text")]
    pub x_poly: QU,
    #[serde(serialize_with = "text_list")]
    pub y_polys: Vec<QU>,
    pub y_poly_equals_x_poly: bool,
    pub r_eliminants: Vec<Eliminant>,
    #[serde(serialize_with = "text")]
    pub r_poly: QU,
    #[serde(serialize_with = "text_list")]
    pub spurious_removed: Vec<QU>,
    /// Polynomials in `X = x + 1/x` satisfied by the trace of `a`.
    #[serde(serialize_with = "text_list")]
    pub character_polys: Vec<QU>,
    /// The gcd route and the common-factor route gave the same result.
    pub routes_agree: bool,
}

/// A univariate eliminant recorded by degree and factorization.
#[derive(Debug, Clone, Serialize)]
pub struct Eliminant {
    pub degree: usize,
    /// `"(factor)^k"` strings, sorted by degree.
    pub factors: Vec<String>,
}

fn text<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn text_list<T: fmt::Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn text_pairs<T: fmt::Display, S: Serializer>(v: &[(T, u32)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(x, k)| (x.to_string(), *k)))
}

fn sign_of(q: &BigRational) -> i8 {
    if q < &num_traits::Zero::zero() {
        -1
    } else {
        1
    }
}

/// Primitive form and the sign of `p` relative to it.
fn primitive_with_sign(p: &Q) -> (Q, i8) {
    (p.primitive().compact_vars(), sign_of(&p.unit_content()))
}

fn uni(p: &Q, var: &str, stage: Stage) -> Result<QU, PipelineError> {
    let Some(i) = p.var_index(var) else {
        return Ok(QU::constant(var, p.constant_term()));
    };
    match p.to_uni(i) {
        Some(u) => Ok(u),
        None => fail(stage, format!("expected a polynomial in {var} alone, got {p}")),
    }
}

fn divide_all(mut f: QU, g: &QU) -> (QU, u32) {
    let mut k = 0;
    while let Some(q) = f.div_exact(g) {
        f = q;
        k += 1;
    }
    (f, k)
}

fn eliminant(f: &QU, stage: Stage) -> Result<(Eliminant, Vec<QU>), PipelineError> {
    let fac = crate::factor::factor_univariate(f).at(stage)?;
    let factors = fac
        .factors
        .iter()
        .map(|(g, k)| if *k == 1 { format!("({g})") } else { format!("({g})^{k}") })
        .collect();
    let irreducible = fac.factors.iter().map(|(g, _)| g.primitive()).collect();
    Ok((Eliminant { degree: f.deg(), factors }, irreducible))
}

/// Irreducible factors common to every list.
fn common_factors(lists: &[Vec<QU>]) -> Vec<QU> {
    let key = |p: &QU| p.to_string();
    let mut common: BTreeSet<String> = lists[0].iter().map(key).collect();
    for l in &lists[1..] {
        let here: BTreeSet<String> = l.iter().map(key).collect();
        common = common.intersection(&here).cloned().collect();
    }
    let mut out: Vec<QU> = lists[0].iter().filter(|p| common.contains(&key(p))).cloned().collect();
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| key(a).cmp(&key(b))));
    out.dedup();
    out
}

fn uni_gcd(polys: &[QU]) -> QU {
    let mut g = polys[0].clone();
    for p in &polys[1..] {
        g = g.gcd(p);
    }
    g
}

/// For a palindromic `p` of degree `2m`, the polynomial `q` of degree `m`
/// with `p(x) = x^m q(x + 1/x)`; `None` otherwise.
pub fn trace_polynomial(p: &QU, var: &str) -> Option<QU> {
    let n = p.deg();
    if n % 2 == 1 || !p.is_palindromic() {
        return None;
    }
    let m = n / 2;
    // x^-m p(x) = c_m + sum_k c_{m+k} (x^k + x^-k) and x^k + x^-k = V_k(x + 1/x).
    let mut q = QU::constant(var, p.coeff(m));
    for k in 1..=m {
        q = &q + &dickson_v(k, var).scale(&p.coeff(m + k));
    }
    Some(q)
}

/// Checks `x^m q(x + 1/x) = p(x)` in Q(x).
pub fn trace_identity_holds(p: &QU, q: &QU) -> bool {
    let v = [p.var()];
    let x = RationalFunction::parse(p.var(), &v).expect("variable");
    let s = RationalFunction::parse(&format!("({0}^2 + 1)/({0})", p.var()), &v).expect("x + 1/x");
    let mut acc = RationalFunction::constant(BigRational::from_integer(0.into()), x.vars().clone());
    for c in q.coeffs().iter().rev() {
        acc = &(&acc * &s) + &RationalFunction::constant(c.clone(), x.vars().clone());
    }
    for _ in 0..q.deg() {
        acc = &acc * &x;
    }
    let pm = Q::from_uni(p, x.vars().clone()).expect("own variable");
    acc == RationalFunction::from_poly(pm)
}

/// Runs the full elimination on the fixed fixture.
pub fn gamma4_pipeline() -> Result<RigidityCertificate, PipelineError> {
    let fx = fixture();
    let assign = standard_assignment();
    let [(rel1, split1), (rel2, split2)] = fx.relators.clone();

    // Stage 1: first relator and the linear parameter.
    let r_res = relation_residual(&rel1, split1, &assign).at(Stage::FirstRelator)?;
    if r_res.is_zero() {
        return fail(Stage::FirstRelator, "residual vanishes identically");
    }
    let (solved_from, r_solution) = solve_linear_parameter(&r_res, "r").at(Stage::SolveParameter)?;
    let (r_numerators, r_numerator_signs): (Vec<Q>, Vec<i8>) =
        r_res.numerators.iter().map(primitive_with_sign).unzip();

    // Stage 2: the first relator after substituting r.
    let r1 = r_res.substitute("r", &r_solution).at(Stage::Constraint)?;
    if !r1.matrix.get(solved_from.0, solved_from.1).is_zero() {
        return fail(Stage::Constraint, "solved entry does not vanish after substitution");
    }
    let entry = r1.numerator(1, 1);
    let mut rest = entry.primitive();
    let mut constraint_cofactors = Vec::new();
    for s in &fx.spurious {
        let sm = Q::from_uni(s, rest.vars().clone()).expect("x is a pipeline variable");
        let (q, k) = crate::poly::divide_out(&rest, &sm);
        if k > 0 {
            constraint_cofactors.push((s.clone(), k));
            rest = q;
        }
    }
    let constraint = rest.primitive().compact_vars();
    if constraint.var_index("y").is_none() || constraint.var_index("x").is_none() {
        return fail(Stage::Constraint, format!("constraint {constraint} does not involve both x and y"));
    }

    // Stage 3: second relator with r substituted.
    let assign_r = substitute_assignment(&assign, "r", &r_solution).at(Stage::SecondRelator)?;
    let s_res = relation_residual(&rel2, split2, &assign_r).at(Stage::SecondRelator)?;
    let (s_numerators, s_numerator_signs): (Vec<Q>, Vec<i8>) =
        s_res.numerators.iter().map(primitive_with_sign).unzip();
    let s_denominators: Vec<Q> = s_res.denominators.iter().map(|d| d.compact_vars()).collect();
    if s_numerators.iter().any(|s| s.is_zero()) {
        return fail(Stage::SecondRelator, "an entry vanishes identically");
    }

    // Stage 4: eliminate y. The four resultants are independent.
    let x_elims: Vec<QU> = s_numerators
        .par_iter()
        .map(|s| resultant(&constraint, s, "y").at(Stage::EliminateY).and_then(|r| uni(&r, "x", Stage::EliminateY)))
        .collect::<Result<_, _>>()?;
    let factored: Vec<(Eliminant, Vec<QU>)> =
        x_elims.par_iter().map(|f| eliminant(f, Stage::EliminateY)).collect::<Result<_, _>>()?;
    let (x_eliminants, x_factor_lists): (Vec<Eliminant>, Vec<Vec<QU>>) = factored.into_iter().unzip();

    // Route A: gcd, squarefree part, spurious factors removed.
    let mut x_gcd = uni_gcd(&x_elims).squarefree_part().primitive();
    let x_gcd_full = x_gcd.clone();
    let mut spurious_removed = Vec::new();
    for s in &fx.spurious {
        let (q, k) = divide_all(x_gcd, s);
        if k > 0 {
            spurious_removed.push(s.clone());
        }
        x_gcd = q;
    }
    let x_poly = x_gcd.primitive();
    // Route B: irreducible factors common to all four eliminants.
    let spurious_keys: BTreeSet<String> = fx.spurious.iter().map(|s| s.primitive().to_string()).collect();
    let common: Vec<QU> = common_factors(&x_factor_lists)
        .into_iter()
        .filter(|f| !spurious_keys.contains(&f.to_string()))
        .collect();
    let x_route_b = common.iter().fold(QU::constant("x", BigRational::from_integer(1.into())), |a, b| &a * b);
    if x_poly.deg() == 0 {
        return fail(Stage::XPolynomial, "no non-spurious common factor survives");
    }
    if !x_poly.is_palindromic() {
        return fail(Stage::XPolynomial, format!("x-polynomial {x_poly} is not palindromic"));
    }
    let mut routes_agree = x_route_b.primitive() == x_poly;

    // Stage 5: y from Res_x(p, C).
    let vars = constraint.vars().clone();
    let p_x = Q::from_uni(&x_poly, vars.clone()).expect("x is a constraint variable");
    let y_res = resultant(&p_x, &constraint, "x").at(Stage::YPolynomials)?;
    let y_res = uni(&y_res, "y", Stage::YPolynomials)?;
    let y_polys = irreducible_factors(&y_res).at(Stage::YPolynomials)?;
    let y_polys: Vec<QU> = y_polys.into_iter().filter(|f| f.deg() > 0).map(|f| f.primitive()).collect();
    if let Some(bad) = y_polys.iter().find(|f| !f.is_palindromic()) {
        return fail(Stage::YPolynomials, format!("y-polynomial {bad} is not palindromic"));
    }
    let y_poly_equals_x_poly = y_polys.iter().any(|f| f.with_var("x") == x_poly);

    // Stage 6: r from the first residual's numerators with x and y constrained.
    let rvars = r_res.numerators[0].vars().clone();
    let px = Q::from_uni(&x_poly, rvars.clone()).expect("x");
    let py = Q::from_uni(&x_poly.with_var("y"), rvars.clone()).expect("y");
    let nonzero: Vec<&Q> = r_res.numerators.iter().filter(|n| !n.is_zero()).collect();
    let r_elims: Vec<QU> = nonzero
        .par_iter()
        .map(|n| {
            let n = n.with_vars(&rvars).expect("shared variables");
            let a = resultant(&px, &n, "x").at(Stage::RPolynomial)?;
            let b = resultant(&py, &a, "y").at(Stage::RPolynomial)?;
            uni(&b, "r", Stage::RPolynomial)
        })
        .collect::<Result<_, _>>()?;
    if r_elims.iter().any(|f| f.is_zero()) {
        return fail(Stage::RPolynomial, "an r-eliminant vanishes identically");
    }
    let r_poly = uni_gcd(&r_elims).squarefree_part().primitive();
    let r_factored: Vec<(Eliminant, Vec<QU>)> =
        r_elims.par_iter().map(|f| eliminant(f, Stage::RPolynomial)).collect::<Result<_, _>>()?;
    let (r_eliminants, r_factor_lists): (Vec<Eliminant>, Vec<Vec<QU>>) = r_factored.into_iter().unzip();
    let r_route_b = common_factors(&r_factor_lists)
        .iter()
        .fold(QU::constant("r", BigRational::from_integer(1.into())), |a, b| &a * b);
    routes_agree &= r_route_b.primitive() == r_poly;
    if r_poly.deg() == 0 {
        return fail(Stage::RPolynomial, "the r-eliminants have no common factor");
    }

    // Stage 7: characters via X = x + 1/x.
    let q = trace_polynomial(&x_poly, "X")
        .ok_or_else(|| PipelineError { stage: Stage::Character, message: "x-polynomial has odd degree".into() })?;
    if !trace_identity_holds(&x_poly, &q) {
        return fail(Stage::Character, "x^m q(x + 1/x) differs from the x-polynomial");
    }
    let character_polys = irreducible_factors(&q).at(Stage::Character)?.into_iter().map(|f| f.primitive()).collect();

    Ok(RigidityCertificate {
        relator1: rel1,
        split1,
        relator2: rel2,
        split2,
        r_numerators,
        r_numerator_signs,
        solved_from,
        r_solution,
        constraint,
        constraint_cofactors,
        s_numerators,
        s_numerator_signs,
        s_denominators,
        x_eliminants,
        x_gcd: x_gcd_full,
        x_poly,
        y_polys,
        y_poly_equals_x_poly,
        r_eliminants,
        r_poly,
        spurious_removed,
        character_polys,
        routes_agree,
    })
}

impl RigidityCertificate {
    /// Primitive numerator of the first residual's `(row, col)` entry.
    pub fn r_numerator(&self, row: usize, col: usize) -> &Q {
        &self.r_numerators[2 * row + col]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_polynomial_of_palindromes() {
        let p = QU::parse("x^4 - x^3 + 3*x^2 - x + 1", "x").unwrap();
        let q = trace_polynomial(&p, "X").unwrap();
        assert_eq!(q.to_string(), "X^2 - X + 1");
        assert!(trace_identity_holds(&p, &q));
        assert!(trace_polynomial(&QU::parse("x^2 + 2*x + 3", "x").unwrap(), "X").is_none());
        let wrong = QU::parse("X^2 + 1", "X").unwrap();
        assert!(!trace_identity_holds(&p, &wrong));
    }
}
