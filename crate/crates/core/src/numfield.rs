//! Real number fields `Q[t]/(m)` with a chosen real embedding, real algebraic
//! numbers, and the quadratic splitting test over such fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::factor::{factor_univariate, is_irreducible};
use crate::poly::{vars_of, MultiPoly, UniPoly};
use crate::resultant::resultant;
use crate::roots::{count_real_roots, count_roots_in, eval_interval, isolate_real_roots, refine, sign_at, Interval};

type QU = UniPoly<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumFieldError {
    #[error("n = {0} is out of range (need n >= 3)")]
    BadN(i64),
    #[error("defining polynomial {0} is not irreducible over Q")]
    Reducible(String),
    #[error("interval does not isolate exactly one root of {0}")]
    BadEmbedding(String),
    #[error("leading coefficient of the quadratic is zero")]
    Degenerate,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `V_k` with `V_k(z + 1/z) = z^k + z^-k`: `V_0 = 2`, `V_1 = x`,
/// `V_{k+1} = x V_k - V_{k-1}`.
pub fn dickson_v(k: usize, var: &str) -> QU {
    let x = QU::x(var);
    let mut prev = QU::constant(var, q(2));
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..k {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The cyclotomic polynomial `Phi_m`.
pub fn cyclotomic(m: usize, var: &str) -> QU {
    let mut f = &QU::monomial(var, q(1), m) - &QU::constant(var, q(1));
    for d in 1..m {
        if m % d == 0 {
            f = f.div_exact(&cyclotomic(d, var)).expect("cyclotomic factors divide x^m - 1");
        }
    }
    f
}

/// Minimal polynomial of `2 cos(pi / n)`, of degree `phi(2n) / 2`.
pub fn minpoly_two_cos_pi_over(n: i64) -> Result<QU, NumFieldError> {
    if n < 3 {
        return Err(NumFieldError::BadN(n));
    }
    let phi = cyclotomic(2 * n as usize, "x");
    let h = phi.deg() / 2;
    // z^-h Phi(z) = a_h + sum_k a_{h+k} V_k(z + 1/z) since Phi is palindromic.
    let mut out = QU::constant("x", phi.coeff(h));
    for k in 1..=h {
        out = &out + &dickson_v(k, "x").scale(&phi.coeff(h + k));
    }
    Ok(out.primitive())
}

/// A real algebraic number: an irreducible integer-primitive polynomial and
/// an interval containing exactly one of its roots, with non-root endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicNumber {
    pub minpoly: QU,
    pub interval: Interval,
}

impl AlgebraicNumber {
    pub fn new(minpoly: QU, interval: Interval) -> Result<Self, NumFieldError> {
        let minpoly = minpoly.primitive();
        if !is_irreducible(&minpoly) {
            return Err(NumFieldError::Reducible(minpoly.to_string()));
        }
        let ok = sign_at(&minpoly, &interval.lo) != 0
            && sign_at(&minpoly, &interval.hi) != 0
            && count_roots_in(&minpoly, &interval.lo, &interval.hi) == 1;
        if !ok {
            return Err(NumFieldError::BadEmbedding(minpoly.to_string()));
        }
        Ok(AlgebraicNumber { minpoly, interval })
    }

    /// Real roots of an irreducible polynomial, in increasing order.
    pub fn real_roots(minpoly: &QU) -> Result<Vec<Self>, NumFieldError> {
        let minpoly = minpoly.primitive();
        if !is_irreducible(&minpoly) {
            return Err(NumFieldError::Reducible(minpoly.to_string()));
        }
        let ivs = isolate_real_roots(&minpoly).expect("irreducible implies squarefree");
        Ok(ivs.into_iter().map(|interval| AlgebraicNumber { minpoly: minpoly.clone(), interval }).collect())
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> Interval {
        let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
        if self.minpoly.deg() == 1 {
            let root = -self.minpoly.coeff(0) / self.minpoly.coeff(1);
            return Interval::point(root);
        }
        refine(&self.minpoly, &self.interval, &w)
    }

    pub fn to_f64(&self) -> f64 {
        let iv = self.enclosure(60);
        crate::scalar::FromRational::from_rational(&iv.midpoint())
    }
}

/// `Q[t]/(m)` with the real embedding given by an isolating interval of `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberField {
    modulus: QU,
    embedding: Interval,
}

/// Element of a [`NumberField`]: a polynomial in the generator of degree
/// below the field degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem(QU);

impl FieldElem {
    pub fn poly(&self) -> &QU {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.0.deg() == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({})", self.0)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl NumberField {
    /// Validates irreducibility and that `embedding` isolates one root.
    pub fn new(modulus: &QU, embedding: Interval) -> Result<Self, NumFieldError> {
        let a = AlgebraicNumber::new(modulus.with_var("t"), embedding)?;
        Ok(NumberField { modulus: a.minpoly.monic(), embedding: a.interval })
    }

    /// The rationals, as `Q[t]/(t)`.
    pub fn rationals() -> Self {
        NumberField { modulus: QU::x("t"), embedding: Interval::new(q(-1), q(1)) }
    }

    /// `Q(2 cos(pi/n))` embedded so the generator is `2 cos(pi/n)`, the
    /// largest real root of its minimal polynomial.
    pub fn two_cos_pi_over(n: i64) -> Result<Self, NumFieldError> {
        let m = minpoly_two_cos_pi_over(n)?.with_var("t");
        let roots = AlgebraicNumber::real_roots(&m)?;
        let top = roots.last().expect("totally real").clone();
        Ok(NumberField { modulus: top.minpoly.monic(), embedding: top.interval })
    }

    pub fn modulus(&self) -> &QU {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn embedding(&self) -> &Interval {
        &self.embedding
    }

    pub fn generator_number(&self) -> AlgebraicNumber {
        AlgebraicNumber { minpoly: self.modulus.primitive(), interval: self.embedding.clone() }
    }

    pub fn is_totally_real(&self) -> bool {
        count_real_roots(&self.modulus) == self.degree()
    }

    pub fn elem(&self, p: &QU) -> FieldElem {
        FieldElem(p.with_var("t").rem(&self.modulus))
    }

    pub fn rational(&self, c: BigRational) -> FieldElem {
        FieldElem(QU::constant("t", c))
    }

    pub fn int(&self, c: i64) -> FieldElem {
        self.rational(q(c))
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(QU::zero("t"))
    }

    pub fn one(&self) -> FieldElem {
        self.int(1)
    }

    pub fn generator(&self) -> FieldElem {
        self.elem(&QU::x("t"))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(&a.0 - &b.0)
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(-&a.0)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem((&a.0 * &b.0).rem(&self.modulus))
    }

    pub fn scale(&self, a: &FieldElem, c: &BigRational) -> FieldElem {
        FieldElem(a.0.scale(c))
    }

    pub fn pow(&self, a: &FieldElem, e: u32) -> FieldElem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.0.ext_gcd(&self.modulus);
        debug_assert_eq!(g.deg(), 0);
        Some(FieldElem(s.rem(&self.modulus)))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// Evaluates a rational polynomial at a field element.
    pub fn eval_poly(&self, f: &QU, a: &FieldElem) -> FieldElem {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, a), &self.rational(c.clone()));
        }
        acc
    }

    /// Sign of the element under the chosen real embedding.
    pub fn sign(&self, a: &FieldElem) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.degree() == 1 || a.is_rational() {
            let v: BigRational = a.0.eval(&self.rational_generator_value());
            return sign_rational(&v);
        }
        let mut iv = self.embedding.clone();
        loop {
            if let Some(s) = eval_interval(&a.0, &iv).sign() {
                return s;
            }
            let w = iv.width() / q(4);
            iv = refine(&self.modulus, &iv, &w);
        }
    }

    fn rational_generator_value(&self) -> BigRational {
        if self.degree() == 1 {
            -self.modulus.coeff(0) / self.modulus.coeff(1)
        } else {
            BigRational::zero()
        }
    }

    /// Numeric value under the embedding.
    pub fn to_f64(&self, a: &FieldElem) -> f64 {
        if self.degree() == 1 {
            let v: BigRational = a.0.eval(&self.rational_generator_value());
            return crate::scalar::FromRational::from_rational(&v);
        }
        let g = self.generator_number().to_f64();
        a.0.eval(&g)
    }

    /// `Res_t(m(t), z - a(t))`, a power of the minimal polynomial of `a`.
    pub fn charpoly(&self, a: &FieldElem, var: &str) -> QU {
        if a.is_rational() {
            let c = a.0.coeff(0);
            let lin = QU::new(var, vec![-c, q(1)]);
            return lin.pow(self.degree() as u32);
        }
        let vars = vars_of(&["t", var]);
        let m = MultiPoly::from_uni(&self.modulus, vars.clone()).expect("t is a variable");
        let z = MultiPoly::var(var, vars.clone()).expect("listed");
        let e = MultiPoly::from_uni(&a.0, vars).expect("t is a variable");
        let r = resultant(&m, &(&z - &e), "t").expect("both involve t");
        r.compact_vars().to_uni(0).unwrap_or_else(|| QU::constant(var, r.constant_term())).with_var(var)
    }

    /// Minimal polynomial over Q (integer-primitive).
    pub fn minimal_polynomial(&self, a: &FieldElem, var: &str) -> QU {
        self.charpoly(a, var).squarefree_part()
    }
}

fn sign_rational(v: &BigRational) -> i8 {
    use num_traits::Signed;
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

// ---------------------------------------------------------------------
// Polynomials over a number field, low degree first.

type KPoly = Vec<FieldElem>;

fn k_trim(mut a: KPoly) -> KPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn k_rem(k: &NumberField, a: &KPoly, b: &KPoly) -> KPoly {
    let mut r = a.clone();
    let inv = k.inv(b.last().unwrap()).expect("nonzero leading coefficient");
    while r.len() >= b.len() {
        let c = k.mul(r.last().unwrap(), &inv);
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = k.sub(&r[shift + j], &k.mul(&c, y));
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        r = k_trim(r);
    }
    r
}

fn k_monic(k: &NumberField, a: &KPoly) -> KPoly {
    let inv = k.inv(a.last().unwrap()).expect("nonzero leading coefficient");
    a.iter().map(|c| k.mul(c, &inv)).collect()
}

fn k_gcd(k: &NumberField, a: &KPoly, b: &KPoly) -> KPoly {
    let (mut a, mut b) = (k_trim(a.clone()), k_trim(b.clone()));
    while !b.is_empty() {
        let r = k_rem(k, &a, &b);
        a = b;
        b = r;
    }
    k_monic(k, &a)
}

/// `f(z + c)` for `f` in K[z].
fn k_shift(k: &NumberField, f: &KPoly, c: &FieldElem) -> KPoly {
    // Horner: acc = acc * (z + c) + coeff.
    let mut acc: KPoly = Vec::new();
    for coef in f.iter().rev() {
        let mut next = vec![k.zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] = k.add(&next[i + 1], a);
            next[i] = k.add(&next[i], &k.mul(a, c));
        }
        next[0] = k.add(&next[0], coef);
        acc = k_trim(next);
    }
    acc
}

/// `Res_t(m(t), f(t, z))` for `f` in K[z] with coefficients lifted to Q[t].
fn k_norm(k: &NumberField, f: &KPoly, var: &str) -> QU {
    let vars = vars_of(&["t", var]);
    let m = MultiPoly::from_uni(&k.modulus, vars.clone()).expect("t is a variable");
    let mut g = MultiPoly::zero(vars.clone());
    let z = MultiPoly::var(var, vars.clone()).expect("listed");
    for c in f.iter().rev() {
        let c = MultiPoly::from_uni(c.poly(), vars.clone()).expect("t is a variable");
        g = &(&g * &z) + &c;
    }
    if !g.involves(0) {
        // Coefficients rational: the norm is f^deg(m).
        return g.compact_vars().to_uni(0).expect("univariate").with_var(var).pow(k.degree() as u32);
    }
    let r = resultant(&m, &g, "t").expect("both involve t");
    r.compact_vars().to_uni(0).unwrap_or_else(|| QU::constant(var, r.constant_term())).with_var(var)
}

// ---------------------------------------------------------------------

/// How a quadratic splitting question was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMethod {
    /// Discriminant is zero.
    ZeroDiscriminant,
    /// Negative discriminant at a real embedding of a totally real field.
    SignShortcut,
    /// Trager's norm method.
    TragerNorm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum QuadraticSplit {
    Irreducible,
    SplitsWithRoots { roots: [FieldElem; 2] },
}

/// Outcome of [`field_factor_quadratic`], with the evidence used.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticReport {
    pub split: QuadraticSplit,
    pub method: SplitMethod,
    pub discriminant: FieldElem,
    /// Minimal polynomial over Q of the discriminant.
    pub discriminant_minpoly: String,
    /// Sign of the discriminant at the embedding.
    pub discriminant_sign: i8,
}

impl QuadraticReport {
    pub fn is_irreducible(&self) -> bool {
        matches!(self.split, QuadraticSplit::Irreducible)
    }
}

/// Decides whether `c2 z^2 + c1 z + c0` factors over `K`.
pub fn field_factor_quadratic(k: &NumberField, coeffs: &[FieldElem; 3]) -> Result<QuadraticReport, NumFieldError> {
    quadratic_impl(k, coeffs, true)
}

/// As [`field_factor_quadratic`] but always running Trager's method.
pub fn trager_factor_quadratic(k: &NumberField, coeffs: &[FieldElem; 3]) -> Result<QuadraticReport, NumFieldError> {
    quadratic_impl(k, coeffs, false)
}

fn quadratic_impl(k: &NumberField, coeffs: &[FieldElem; 3], shortcut: bool) -> Result<QuadraticReport, NumFieldError> {
    let [c0, c1, c2] = coeffs;
    if c2.is_zero() {
        return Err(NumFieldError::Degenerate);
    }
    let disc = k.sub(&k.mul(c1, c1), &k.scale(&k.mul(c0, c2), &q(4)));
    let disc_minpoly = k.minimal_polynomial(&disc, "d");
    let disc_sign = k.sign(&disc);
    let report = |split, method| QuadraticReport {
        split,
        method,
        discriminant: disc.clone(),
        discriminant_minpoly: disc_minpoly.to_string(),
        discriminant_sign: disc_sign,
    };
    let two_c2 = k.scale(c2, &q(2));
    if disc.is_zero() {
        let root = k.div(&k.neg(c1), &two_c2).expect("c2 nonzero");
        return Ok(report(QuadraticSplit::SplitsWithRoots { roots: [root.clone(), root] }, SplitMethod::ZeroDiscriminant));
    }
    if shortcut && disc_sign < 0 && k.is_totally_real() {
        return Ok(report(QuadraticSplit::Irreducible, SplitMethod::SignShortcut));
    }
    // Trager: make squarefree the norm of f(z - s*theta), factor it over Q,
    // and pull factors back with gcds in K[z].
    let f: KPoly = k_monic(k, &vec![c0.clone(), c1.clone(), c2.clone()]);
    let theta = k.generator();
    for s in shifts() {
        let shift = k.scale(&theta, &q(-s));
        let g = k_shift(k, &f, &shift);
        let norm = k_norm(k, &g, "z");
        if !norm.is_squarefree() {
            continue;
        }
        let factors = factor_univariate(&norm).expect("nonzero norm");
        for (nf, _) in &factors.factors {
            let nk: KPoly = nf.coeffs().iter().map(|c| k.rational(c.clone())).collect();
            let h = k_gcd(k, &g, &nk);
            if h.len() == 2 {
                // g(z) = f(z - s*theta), so a root rho of g gives the root rho - s*theta of f.
                let root_g = k.neg(&h[0]);
                let root = k.add(&root_g, &shift);
                let other = k.sub(&k.div(&k.neg(c1), c2).expect("c2 nonzero"), &root);
                return Ok(report(QuadraticSplit::SplitsWithRoots { roots: [root, other] }, SplitMethod::TragerNorm));
            }
        }
        return Ok(report(QuadraticSplit::Irreducible, SplitMethod::TragerNorm));
    }
    unreachable!("some shift makes the norm squarefree")
}

fn shifts() -> impl Iterator<Item = i64> {
    (0i64..).flat_map(|i| if i == 0 { vec![0] } else { vec![i, -i] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QU {
        QU::parse(s, "x").unwrap()
    }

    #[test]
    fn minpolys_of_two_cos() {
        assert_eq!(minpoly_two_cos_pi_over(4).unwrap(), p("x^2 - 2"));
        assert_eq!(minpoly_two_cos_pi_over(5).unwrap(), p("x^2 - x - 1"));
        assert_eq!(minpoly_two_cos_pi_over(9).unwrap(), p("x^3 - 3*x - 1"));
        assert_eq!(minpoly_two_cos_pi_over(3).unwrap(), p("x - 1"));
        assert!(minpoly_two_cos_pi_over(2).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let k = NumberField::two_cos_pi_over(4).unwrap();
        let t = k.generator();
        assert_eq!(k.mul(&t, &t), k.int(2));
        let a = k.add(&t, &k.int(1));
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(k.sign(&k.sub(&t, &k.rational(BigRational::new(141.into(), 100.into())))), 1);
        assert_eq!(k.sign(&k.sub(&t, &k.rational(BigRational::new(142.into(), 100.into())))), -1);
        assert_eq!(k.minimal_polynomial(&a, "z"), QU::parse("z^2 - 2*z - 1", "z").unwrap());
        assert!((k.to_f64(&t) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn quadratic_splitting() {
        let qf = NumberField::rationals();
        let r = field_factor_quadratic(&qf, &[qf.int(-2), qf.int(0), qf.int(1)]).unwrap();
        assert!(r.is_irreducible());

        let k = NumberField::two_cos_pi_over(4).unwrap();
        let r = field_factor_quadratic(&k, &[k.int(-2), k.int(0), k.int(1)]).unwrap();
        match r.split {
            QuadraticSplit::SplitsWithRoots { roots } => {
                let t = k.generator();
                assert!(roots.contains(&t) && roots.contains(&k.neg(&t)));
            }
            _ => panic!("z^2 - 2 splits over Q(sqrt 2)"),
        }
        let r = field_factor_quadratic(&k, &[k.int(-21), k.int(0), k.int(1)]).unwrap();
        assert!(r.is_irreducible());
        assert_eq!(r.method, SplitMethod::TragerNorm);
    }
}
