//! Sparse multivariate polynomials with a graded-lex term order.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{ExactDiv, FromRational, Ring};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shared variable list.
pub type Vars = Arc<Vec<String>>;

pub fn vars_of(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

/// Sparse polynomial in named variables over a coefficient ring `C`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C> {
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> MultiPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(C::one(), vars)
    }

    pub fn constant(c: C, vars: Vars) -> Self {
        let n = vars.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(n), c);
        }
        MultiPoly { vars, terms }
    }

    /// The variable `name` as a polynomial; `None` if it is not in `vars`.
    pub fn var(name: &str, vars: Vars) -> Option<Self> {
        let i = vars.iter().position(|v| v == name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Some(Self::monomial(Monomial(e), C::one(), vars))
    }

    pub fn monomial(m: Monomial, c: C, vars: Vars) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length must match variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { vars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut out: BTreeMap<Monomial, C> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length must match variable count");
            accumulate(&mut out, Monomial(e), c);
        }
        MultiPoly { vars, terms: out }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial::one(self.nvars())).cloned().unwrap_or_else(C::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Variables with a positive exponent in some term.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.involves(i)).collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.mul(m), v.clone() * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable this polynomial actually uses.
    pub fn with_vars(&self, vars: &Vars) -> Option<Self> {
        if Arc::ptr_eq(&self.vars, vars) || self.vars == *vars {
            return Some(MultiPoly { vars: vars.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(i) => map.push(None),
                None => return None,
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = x;
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Some(MultiPoly { vars: vars.clone(), terms })
    }

    /// Both operands expressed over a common variable list (self's order first).
    pub fn aligned<'a>(&'a self, other: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        let mut union: Vec<String> = self.vars.to_vec();
        for v in other.vars.iter() {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        let union = Arc::new(union);
        let a = if union.len() == self.nvars() {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.with_vars(&union).expect("union contains all variables"))
        };
        let b = Cow::Owned(other.with_vars(&union).expect("union contains all variables"));
        (a, b)
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.clone();
            e.0[var] = 0;
            out[k].insert(e, c.clone());
        }
        out.into_iter().map(|terms| MultiPoly { vars: self.vars.clone(), terms }).collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(var: usize, coeffs: &[Self], vars: Vars) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut e = m.clone();
                e.0[var] += k as u32;
                accumulate(&mut terms, e, v.clone());
            }
        }
        MultiPoly { vars, terms }
    }

    /// Substitutes `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let (me, value) = self.aligned(value);
        let coeffs = me.coefficients_in(var);
        // Horner in the substituted value.
        let mut acc = Self::zero(me.vars.clone());
        for c in coeffs.iter().rev() {
            acc = &(&acc * value.as_ref()) + c;
        }
        acc
    }

    /// Evaluates variable `var` at a coefficient value.
    pub fn eval_var(&self, var: usize, value: &C) -> Self {
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.0[var];
            e.0[var] = 0;
            let mut v = c.clone();
            for _ in 0..k {
                v = v * value.clone();
            }
            accumulate(&mut terms, e, v);
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Full evaluation with a coefficient map into the target scalar.
    pub fn eval_with<S, F>(&self, point: &[S], embed: F) -> S
    where
        S: Ring,
        F: Fn(&C) -> S,
    {
        assert_eq!(point.len(), self.nvars(), "point dimension must match variable count");
        // Power tables per variable, built lazily up to the degree used.
        let mut powers: Vec<Vec<S>> = point.iter().map(|p| vec![S::one(), p.clone()]).collect();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap().clone() * point[i].clone();
                    table.push(next);
                }
                t = t * table[e as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Univariate view in `var`; `None` if another variable occurs.
    pub fn to_uni(&self, var: usize) -> Option<super::UniPoly<C>> {
        if (0..self.nvars()).any(|i| i != var && self.involves(i)) {
            return None;
        }
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![C::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(super::UniPoly::new(&self.vars[var], coeffs))
    }

    /// Embeds a univariate polynomial as a polynomial in `vars`.
    pub fn from_uni(u: &super::UniPoly<C>, vars: Vars) -> Option<Self> {
        let i = vars.iter().position(|v| v == u.var())?;
        let n = vars.len();
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut e = vec![0; n];
                e[i] = k as u32;
                (Monomial(e), c.clone())
            })
            .collect();
        Some(MultiPoly { vars, terms })
    }
}

impl<C: ExactDiv> MultiPoly<C> {
    /// `self / divisor` when the division is exact; `None` otherwise.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (num, den) = self.aligned(divisor);
        let (num, den) = (num.into_owned(), den.into_owned());
        let (lm, lc) = den.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        if den.num_terms() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &num.terms {
                if !lm.divides(m) {
                    return None;
                }
                terms.insert(m.div(&lm), c.exact_div(&lc)?);
            }
            return Some(MultiPoly { vars: num.vars.clone(), terms });
        }
        let mut quotient: BTreeMap<Monomial, C> = BTreeMap::new();
        let mut rem = num.terms;
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&lm);
            let qc = rc.exact_div(&lc)?;
            for (m, c) in &den.terms {
                accumulate(&mut rem, m.mul(&qm), -(c.clone() * qc.clone()));
            }
            quotient.insert(qm, qc);
        }
        Some(MultiPoly { vars: den.vars.clone(), terms: quotient })
    }
}

fn accumulate<C: Ring>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().clone() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl<C: Ring> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let (a, b) = self.aligned(rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { vars: a.vars.clone(), terms }
    }
}

impl<C: Ring> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let (a, b) = self.aligned(rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        MultiPoly { vars: a.vars.clone(), terms }
    }
}

impl<C: Ring> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let (a, b) = self.aligned(rhs);
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = ca.clone() * cb.clone();
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = e.get().clone() + prod;
                        *e.get_mut() = v;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars: a.vars.clone(), terms }
    }
}

impl<C: Ring> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Ring> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Ring> $tr<&MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Ring> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

/// Coefficient rings with a natural embedding into rational-valued scalars.
pub trait Embed {
    fn embed<S: FromRational>(&self) -> S;
}

impl Embed for BigRational {
    fn embed<S: FromRational>(&self) -> S {
        S::from_rational(self)
    }
}

impl Embed for BigInt {
    fn embed<S: FromRational>(&self) -> S {
        S::from_rational(&BigRational::from_integer(self.clone()))
    }
}

impl<C: Ring + Embed> MultiPoly<C> {
    /// Evaluates at a point of any scalar type rationals map into
    /// (`f64`, `Complex<f64>`, `BigRational`, `Complex<BigRational>`, ...).
    pub fn eval<S: Ring + FromRational>(&self, point: &[S]) -> S {
        self.eval_with(point, |c| c.embed::<S>())
    }
}

impl MultiPoly<BigRational> {
    /// Parses the text format over an explicit variable list.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, super::ParseError> {
        super::parse::parse_poly(text, Some(vars_of(vars)))
    }

    /// Parses the text format, collecting variables in order of appearance.
    pub fn parse_auto(text: &str) -> Result<Self, super::ParseError> {
        super::parse::parse_poly(text, None)
    }

    pub fn from_integer_poly(p: &MultiPoly<BigInt>) -> Self {
        p.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// `(d, P)` with `self = P / d`, `P` integral and `d > 0` the lcm of denominators.
    pub fn to_integer_poly(&self) -> (BigInt, MultiPoly<BigInt>) {
        let d = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let p = self.map_coeffs(|c| (c * BigRational::from_integer(d.clone())).to_integer());
        (d, p)
    }

    /// Rational content: the unit `u` with `self / u` integral, primitive,
    /// and with positive leading coefficient.
    pub fn unit_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let u = BigRational::new(num, den);
        if self.leading_coeff().is_negative() {
            -u
        } else {
            u
        }
    }

    /// Integer-primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let u = self.unit_content();
        self.scale(&u.recip())
    }

    /// Equality up to a nonzero rational factor; returns that factor
    /// (`self = factor * other`).
    pub fn unit_ratio(&self, other: &Self) -> Option<BigRational> {
        if self.is_zero() || other.is_zero() {
            return (self.is_zero() && other.is_zero()).then(BigRational::one);
        }
        let (a, b) = self.aligned(other);
        if a.terms.len() != b.terms.len() {
            return None;
        }
        let ratio = a.leading_coeff() / b.leading_coeff();
        let same = a
            .terms
            .iter()
            .zip(b.terms.iter())
            .all(|((ma, ca), (mb, cb))| ma == mb && *ca == cb * &ratio);
        same.then_some(ratio)
    }

    /// Drops variables that do not occur.
    pub fn compact_vars(&self) -> Self {
        let used: Vec<String> = self.used_vars().into_iter().map(|i| self.vars[i].clone()).collect();
        self.with_vars(&Arc::new(used)).expect("used variables are kept")
    }
}

impl<C: Ring + fmt::Display + Signed> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let mono = format_monomial(m, &self.vars);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<C: Ring + fmt::Display + Signed> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

pub(crate) fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
        .collect();
    parts.join("*")
}
