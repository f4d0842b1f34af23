//! Reduced quotients of multivariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::multi::{MultiPoly, Vars};

type Q = MultiPoly<BigRational>;

/// `num / den` with `gcd(num, den) = 1` and `den` integer-primitive with a
/// positive leading coefficient. Zero is `0 / 1`.
#[derive(Clone)]
pub struct RationalFunction {
    num: Q,
    den: Q,
}

impl RationalFunction {
    /// Reduces `num / den`; `None` if `den` is zero.
    pub fn new(num: Q, den: Q) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let (num, den) = {
            let (a, b) = num.aligned(&den);
            (a.into_owned(), b.into_owned())
        };
        if num.is_zero() {
            return Some(Self::from_poly(MultiPoly::zero(den.vars().clone())));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Some(Self::normalized(num, den))
    }

    /// Assumes `num` and `den` are already coprime.
    fn normalized(num: Q, den: Q) -> Self {
        let u = den.unit_content();
        if u.is_one() {
            return RationalFunction { num, den };
        }
        let inv = u.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Q) -> Self {
        let den = MultiPoly::one(p.vars().clone());
        RationalFunction { num: p, den }
    }

    pub fn constant(c: BigRational, vars: Vars) -> Self {
        Self::from_poly(MultiPoly::constant(c, vars))
    }

    /// Parses `a / b` or a plain polynomial; the division must be top level
    /// and written as `(num)/(den)`.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, super::ParseError> {
        if let Some((n, d)) = split_top_level_slash(text) {
            let num = MultiPoly::parse(n, vars)?;
            let den = MultiPoly::parse(d, vars)?;
            return Self::new(num, den).ok_or(super::ParseError { column: 1, message: "zero denominator".into() });
        }
        Ok(Self::from_poly(MultiPoly::parse(text, vars)?))
    }

    pub fn num(&self) -> &Q {
        &self.num
    }

    pub fn den(&self) -> &Q {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Re-expresses over `vars` (which must contain every used variable).
    pub fn with_vars(&self, vars: &Vars) -> Option<Self> {
        Some(RationalFunction { num: self.num.with_vars(vars)?, den: self.den.with_vars(vars)? })
    }

    /// Substitutes a rational function for variable `name`; `None` if the
    /// result has a vanishing denominator.
    pub fn substitute(&self, name: &str, value: &RationalFunction) -> Option<Self> {
        let Some(i) = self.num.var_index(name) else {
            return Some(self.clone());
        };
        let num = substitute_poly(&self.num, i, value);
        let den = substitute_poly(&self.den, i, value);
        num.checked_div(&den)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let inv = other.recip()?;
        Some(self * &inv)
    }

    /// Evaluates at a point given in `vars()` order; `None` on a pole.
    pub fn eval<S>(&self, point: &[S]) -> Option<S>
    where
        S: crate::scalar::Ring + crate::scalar::FromRational + Div<Output = S>,
    {
        let d: S = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }
}

/// `p(..., value, ...)` as a rational function.
fn substitute_poly(p: &Q, var: usize, value: &RationalFunction) -> RationalFunction {
    let coeffs = p.coefficients_in(var);
    let mut acc = RationalFunction::from_poly(MultiPoly::zero(p.vars().clone()));
    for c in coeffs.iter().rev() {
        acc = &(&acc * value) + &RationalFunction::from_poly(c.clone());
    }
    acc
}

fn split_top_level_slash(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                let (n, d) = (text[..i].trim(), text[i + 1..].trim());
                let wrapped = |s: &str| s.starts_with('(') && s.ends_with(')');
                if wrapped(n) && wrapped(d) {
                    return Some((n, d));
                }
                return None;
            }
            _ => {}
        }
    }
    None
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.num.aligned(&other.num);
        let (c, d) = self.den.aligned(&other.den);
        a.terms().eq(b.terms()) && c.terms().eq(d.terms())
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den.is_one_poly() && rhs.den.is_one_poly() {
            return RationalFunction::from_poly(&self.num + &rhs.num);
        }
        let (d1, d2) = self.den.aligned(&rhs.den);
        if d1.terms().eq(d2.terms()) {
            return RationalFunction::new(&self.num + &rhs.num, d1.into_owned()).expect("nonzero");
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &(&a * &b) * &g;
        RationalFunction::new(num, den).expect("nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            let (a, _) = self.num.aligned(&rhs.num);
            return RationalFunction::from_poly(MultiPoly::zero(a.vars().clone()));
        }
        // Cross-cancel before multiplying to keep sizes down.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from_poly(MultiPoly::zero(Arc::new(Vec::new())))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::from_poly(MultiPoly::one(Arc::new(Vec::new())))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for Q {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.constant_term().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: [&str; 3] = ["x", "y", "r"];

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s, &V).unwrap()
    }

    #[test]
    fn reduces_and_normalizes() {
        let f = rf("(x^2 - 1)/(-2*x - 2)");
        assert_eq!(f.num().to_string(), "-1/2*x + 1/2");
        assert_eq!(f.den().to_string(), "1");
        let g = rf("(x*y)/(2*x^2)");
        assert_eq!(g.to_string(), "(1/2*y)/(x)");
    }

    #[test]
    fn field_operations() {
        let a = rf("(1)/(x)");
        let b = rf("(1)/(y)");
        assert_eq!(&a + &b, rf("(x + y)/(x*y)"));
        assert_eq!(&(&a * &b) * &rf("x*y"), RationalFunction::one());
        assert!((&a - &a).is_zero());
        assert_eq!(a.recip().unwrap(), rf("x"));
    }

    #[test]
    fn substitution() {
        let f = rf("x*r + 1");
        let r = rf("(1)/(x)");
        assert_eq!(f.substitute("r", &r).unwrap(), rf("2"));
        let v: f64 = rf("(x + 1)/(y)").eval(&[1.0, 4.0, 0.0]).unwrap();
        assert_eq!(v, 0.5);
    }
}
