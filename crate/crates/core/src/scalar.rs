//! Scalar traits shared by the generic polynomial and matrix types.

use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring with identity, as far as the algorithms here need one.
pub trait Ring: Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> {}

impl<T> Ring for T where T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T> {}

/// Division that is only defined when the quotient is exact.
pub trait ExactDiv: Ring {
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

impl ExactDiv for i64 {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if *other == 0 || self % other != 0 {
            return None;
        }
        Some(self / other)
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

/// Scalars that rational coefficients can be mapped into.
pub trait FromRational {
    fn from_rational(q: &BigRational) -> Self;
}

impl FromRational for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl FromRational for f64 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T: FromRational + Zero + Clone> FromRational for Complex<T> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(T::from_rational(q), T::zero())
    }
}

/// Rounds `q` to the nearest multiple of `2^-bits`.
pub fn round_to_bits(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

/// Rounds both parts of a complex rational.
pub fn round_complex(z: &Complex<BigRational>, bits: u32) -> Complex<BigRational> {
    Complex::new(round_to_bits(&z.re, bits), round_to_bits(&z.im, bits))
}

/// Squared modulus, exact.
pub fn norm_sqr(z: &Complex<BigRational>) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

/// Rational approximation of an `f64` (exact binary value).
pub fn rational_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}

/// Parses a decimal literal such as `-2.29128784747792` exactly.
pub fn rational_from_decimal(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mantissa: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = BigRational::new(mantissa, den);
    Some(if neg { -q } else { q })
}

/// `floor(log10 |q|)`-ish magnitude used in reports; `None` for zero.
pub fn log10_abs(q: &BigRational) -> Option<f64> {
    if q.is_zero() {
        return None;
    }
    let q = q.abs();
    let n = q.numer().bits() as f64;
    let d = q.denom().bits() as f64;
    // Exact enough for reporting: shift both to ~60 significant bits.
    let shift_n = (n as i64 - 60).max(0) as u64;
    let shift_d = (d as i64 - 60).max(0) as u64;
    let num = (q.numer() >> shift_n).to_f64()?;
    let den = (q.denom() >> shift_d).to_f64()?;
    Some(num.log10() - den.log10() + (shift_n as f64 - shift_d as f64) * std::f64::consts::LOG10_2)
}

/// Decimal expansion of `q` rounded to `digits` places after the point.
pub fn to_decimal(q: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let n = (q * BigRational::from_integer(scale.clone())).round().to_integer();
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits { format!("{}{s}", "0".repeat(digits + 1 - s.len())) } else { s };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `re + im i` with both parts in decimal.
pub fn complex_to_decimal(z: &Complex<BigRational>, digits: usize) -> String {
    let im = to_decimal(&z.im, digits);
    match im.strip_prefix('-') {
        Some(abs) => format!("{} - {abs}i", to_decimal(&z.re, digits)),
        None => format!("{} + {im}i", to_decimal(&z.re, digits)),
    }
}

#[cfg(test)]
mod decimal_tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        let q = rational_from_decimal("-2.29128784747792").unwrap();
        assert_eq!(to_decimal(&q, 5), "-2.29129");
        assert_eq!(to_decimal(&BigRational::new(1.into(), 8.into()), 2), "0.13");
        assert_eq!(to_decimal(&BigRational::new((-1).into(), 200.into()), 2), "-0.01");
        assert_eq!(to_decimal(&BigRational::from_integer(7.into()), 0), "7");
        let z = Complex::new(BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 4.into()));
        assert_eq!(complex_to_decimal(&z, 2), "0.50 - 0.75i");
    }
}
