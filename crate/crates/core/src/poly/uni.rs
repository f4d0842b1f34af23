//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{FromRational, Ring};

/// Polynomial in one named variable, coefficients stored low degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<C> {
    var: String,
    coeffs: Vec<C>,
}

impl<C: Ring> UniPoly<C> {
    pub fn new(var: &str, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str) -> Self {
        UniPoly { var: var.to_string(), coeffs: Vec::new() }
    }

    pub fn constant(var: &str, c: C) -> Self {
        Self::new(var, vec![c])
    }

    pub fn x(var: &str) -> Self {
        Self::new(var, vec![C::zero(), C::one()])
    }

    /// `c * var^k`
    pub fn monomial(var: &str, c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(&self, var: &str) -> Self {
        UniPoly { var: var.to_string(), coeffs: self.coeffs.clone() }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|v| v.clone() * c.clone()).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(&self.var, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.var, C::one());
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

    /// Horner evaluation with a coefficient map into the target scalar.
    pub fn eval_with<S: Ring>(&self, x: &S, embed: impl Fn(&C) -> S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    /// `self(other(var))`
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero(&other.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(&other.var, c.clone());
        }
        acc
    }

    /// Reversed coefficient list: `x^deg * p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(&self.var, c)
    }

    /// `p(-x)`
    pub fn negate_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Self::new(&self.var, coeffs)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(&self.var, self.coeffs.iter().map(f).collect())
    }
}

impl<C: Ring + super::multi::Embed> UniPoly<C> {
    pub fn eval<S: Ring + FromRational>(&self, x: &S) -> S {
        self.eval_with(x, |c| c.embed::<S>())
    }
}

impl<C: Ring> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::new(&self.var, coeffs)
    }
}

impl<C: Ring> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::new(&self.var, coeffs)
    }
}

impl<C: Ring> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.var);
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(&self.var, coeffs)
    }
}

impl<C: Ring> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly::new(&self.var, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Ring> $tr for UniPoly<C> {
            type Output = UniPoly<C>;
            fn $m(self, rhs: UniPoly<C>) -> UniPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Ring> $tr<&UniPoly<C>> for UniPoly<C> {
            type Output = UniPoly<C>;
            fn $m(self, rhs: &UniPoly<C>) -> UniPoly<C> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Ring> Neg for UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        -&self
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl UniPoly<BigRational> {
    pub fn from_ints(var: &str, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_integer_coeffs(var: &str, coeffs: &[BigInt]) -> Self {
        Self::new(var, coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Parses the text format; the polynomial must involve at most one variable.
    pub fn parse(text: &str, var: &str) -> Result<Self, super::ParseError> {
        let p = super::MultiPoly::parse(text, &[var])?;
        Ok(p.to_uni(0).expect("single variable"))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect();
        Self::new(&self.var, coeffs)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.deg();
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (Self::zero(&self.var), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * d;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(&self.var, quot), Self::new(&self.var, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient if `divisor | self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd over Q (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let var = self.var.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(&var, rat(1)), Self::zero(&var));
        let (mut t0, mut t1) = (Self::zero(&var), Self::constant(&var, rat(1)));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Positive rational `u` such that `self / u` has coprime integer
    /// coefficients, signed so the leading coefficient becomes positive.
    pub fn unit_content(&self) -> BigRational {
        if self.is_zero() {
            return rat(1);
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
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
        self.scale(&self.unit_content().recip())
    }

    /// Integer coefficients of the primitive associate.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive().coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn is_integer_primitive(&self) -> bool {
        !self.is_zero() && self.primitive() == *self
    }

    /// `x^deg p(1/x) = p(x)`.
    pub fn is_palindromic(&self) -> bool {
        !self.is_zero() && self.reversed() == *self && self.coeffs[0] != BigRational::zero()
    }

    /// Equality up to a nonzero rational factor.
    pub fn unit_ratio(&self, other: &Self) -> Option<BigRational> {
        if self.coeffs.len() != other.coeffs.len() || self.is_zero() {
            return None;
        }
        let ratio = self.leading_coeff() / other.leading_coeff();
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == b * &ratio).then_some(ratio)
    }

    /// Squarefree part, integer-primitive.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }
}

impl<C: Ring + fmt::Display + Signed> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, k),
            };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<C: Ring + fmt::Display + Signed> fmt::Debug for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UniPoly<BigRational> {
        UniPoly::parse(s, "x").unwrap()
    }

    #[test]
    fn display_round_trip() {
        let f = p("x^4 - x^3 + 3*x^2 - x + 1");
        assert_eq!(f.to_string(), "x^4 - x^3 + 3*x^2 - x + 1");
        assert_eq!(p("-1/2*x + 3").to_string(), "-1/2*x + 3");
    }

    #[test]
    fn division_and_gcd() {
        let a = p("x^3 - 1");
        let b = p("x^2 - 1");
        assert_eq!(a.gcd(&b), p("x - 1"));
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn palindrome_and_squarefree() {
        assert!(p("x^4 - x^3 + 3*x^2 - x + 1").is_palindromic());
        assert!(!p("x^4 + x^3 - x^2 + x + 2").is_palindromic());
        let f = &p("x^2 + 1").pow(2) * &p("x - 3");
        assert_eq!(f.squarefree_part(), p("x^3 - 3*x^2 + x - 3"));
        assert!(!f.is_squarefree());
    }

    #[test]
    fn evaluation_over_several_scalars() {
        let f = p("x^2 - 2");
        assert_eq!(f.eval(&3.0f64), 7.0);
        let z = num_complex::Complex::new(0.0f64, 1.0);
        assert_eq!(f.eval(&z), num_complex::Complex::new(-3.0, 0.0));
        assert_eq!(f.eval(&rat(2)), rat(2));
    }
}
