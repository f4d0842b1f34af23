//! Real root isolation with Sturm sequences and rational bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::UniPoly;

type QU = UniPoly<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial has no isolated roots")]
    Zero,
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Sign if the interval excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use crate::scalar::FromRational;
        (f64::from_rational(&self.lo), f64::from_rational(&self.hi))
    }
}

/// Interval Horner evaluation of a rational polynomial.
pub fn eval_interval(f: &QU, x: &Interval) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Interval::point(c.clone()));
    }
    acc
}

pub fn sign_at(f: &QU, x: &BigRational) -> i8 {
    let v: BigRational = f.eval(x);
    sign_of(&v)
}

fn sign_of(v: &BigRational) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Canonical Sturm sequence `f, f', -rem(f, f'), ...`.
pub fn sturm_sequence(f: &QU) -> Vec<QU> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().deg() > 0 {
        let n = seq.len();
        let r = -seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps the sign pattern.
        let u = r.unit_content().abs();
        seq.push(r.scale(&u.recip()));
    }
    seq.retain(|p| !p.is_zero());
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[QU], x: &BigRational) -> usize {
    variations(seq.iter().map(|p| sign_at(p, x)))
}

fn variations_at_infinity(seq: &[QU], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = sign_of(&p.leading_coeff());
        if positive || p.deg() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(f: &QU) -> usize {
    if f.deg() == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Number of distinct roots in the half-open interval `(a, b]`.
pub fn count_roots_in(f: &QU, a: &BigRational, b: &BigRational) -> usize {
    let seq = sturm_sequence(f);
    variations_at(&seq, a) - variations_at(&seq, b)
}

/// Cauchy bound: every root has absolute value below `1 + max |a_i / a_n|`.
pub fn root_bound(f: &QU) -> BigRational {
    let lc = f.leading_coeff().abs();
    let m = f.coeffs()[..f.deg()].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(BigRational::zero);
    let b = m + BigRational::one();
    // Round up to an integer so endpoints stay simple.
    BigRational::from_integer(b.ceil().to_integer())
}

/// Disjoint isolating intervals for the real roots of a squarefree polynomial,
/// in increasing order. Endpoints are never roots.
pub fn isolate_real_roots(f: &QU) -> Result<Vec<Interval>, RootError> {
    if f.is_zero() {
        return Err(RootError::Zero);
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    if !f.is_squarefree() {
        return Err(RootError::NotSquarefree);
    }
    let seq = sturm_sequence(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = variations_at(&seq, &lo) - variations_at(&seq, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && sign_at(f, &hi) != 0 && sign_at(f, &lo) != 0 {
            out.push(Interval::new(lo, hi));
            continue;
        }
        let mid = split_point(f, &lo, &hi);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    // Bound endpoints are never roots, and split points avoid roots.
    Ok(out)
}

/// A point strictly inside `(lo, hi)` that is not a root, near the midpoint.
fn split_point(f: &QU, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let mid = (lo + hi) / &two;
    if sign_at(f, &mid) != 0 {
        return mid;
    }
    let mut step = (hi - lo) / BigRational::from_integer(BigInt::from(8));
    loop {
        let cand = &mid + &step;
        if sign_at(f, &cand) != 0 {
            return cand;
        }
        step /= &two;
    }
}

/// Bisects an isolating interval (for a sign-changing simple root) until its
/// width is at most `width`.
pub fn refine(f: &QU, iv: &Interval, width: &BigRational) -> Interval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let s_lo = sign_at(f, &lo);
    debug_assert!(s_lo != 0 && s_lo != sign_at(f, &hi));
    while &(&hi - &lo) > width {
        let mid = split_point(f, &lo, &hi);
        if sign_at(f, &mid) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FromRational;

    fn p(s: &str) -> QU {
        QU::parse(s, "x").unwrap()
    }

    #[test]
    fn sqrt_two() {
        let ivs = isolate_real_roots(&p("x^2 - 2")).unwrap();
        assert_eq!(ivs.len(), 2);
        let eps = BigRational::new(1.into(), BigInt::from(10).pow(12));
        let r = refine(&p("x^2 - 2"), &ivs[1], &eps);
        assert!((f64::from_rational(&r.midpoint()) - 2f64.sqrt()).abs() < 1e-11);
        assert!(ivs[0].hi <= BigRational::zero());
    }

    #[test]
    fn counts() {
        assert_eq!(isolate_real_roots(&p("x^3 - 3*x - 1")).unwrap().len(), 3);
        assert_eq!(count_real_roots(&p("x^4 - x^3 + 3*x^2 - x + 1")), 0);
        assert!(isolate_real_roots(&p("x^4 - x^3 + 3*x^2 - x + 1")).unwrap().is_empty());
        assert_eq!(isolate_real_roots(&p("x^2")), Err(RootError::NotSquarefree));
        // Roots at dyadic split points are handled.
        let ivs = isolate_real_roots(&p("x^3 - x")).unwrap();
        assert_eq!(ivs.len(), 3);
        for iv in &ivs {
            assert_ne!(sign_at(&p("x^3 - x"), &iv.lo), 0);
            assert_ne!(sign_at(&p("x^3 - x"), &iv.hi), 0);
        }
    }
}
