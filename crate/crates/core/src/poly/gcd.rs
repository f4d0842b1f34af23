//! Multivariate gcd over Q by recursive primitive remainder sequences.
//!
//! Results are normalized to be integer-primitive with positive leading
//! coefficient; `gcd(0, 0) = 0`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::multi::{Monomial, MultiPoly};

type Q = MultiPoly<BigRational>;

pub fn gcd(f: &Q, g: &Q) -> Q {
    let (f, g) = f.aligned(g);
    let (f, g) = (f.as_ref(), g.as_ref());
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    gcd_rec(f, g)
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Q>) -> Option<Q> {
    let mut it = polys.into_iter();
    let first = it.next()?.primitive();
    Some(it.fold(first, |acc, p| gcd(&acc, p)))
}

pub fn lcm(f: &Q, g: &Q) -> Q {
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero(f.aligned(g).0.vars().clone());
    }
    let d = gcd(f, g);
    (f * g).div_exact(&d).expect("gcd divides the product").primitive()
}

fn one_like(f: &Q) -> Q {
    MultiPoly::one(f.vars().clone())
}

fn single_term_gcd(mono: &Monomial, f: &Q) -> Q {
    let mut e = mono.0.clone();
    for (m, _) in f.terms() {
        for (a, b) in e.iter_mut().zip(&m.0) {
            *a = (*a).min(*b);
        }
    }
    MultiPoly::monomial(Monomial(e), BigRational::one(), f.vars().clone())
}

/// Both inputs nonzero and over the same variables.
fn gcd_rec(f: &Q, g: &Q) -> Q {
    if f.is_constant() || g.is_constant() {
        return one_like(f);
    }
    if f.num_terms() == 1 {
        return single_term_gcd(f.leading().unwrap().0, g);
    }
    if g.num_terms() == 1 {
        return single_term_gcd(g.leading().unwrap().0, f);
    }
    if f.unit_ratio(g).is_some() {
        return f.primitive();
    }
    let n = f.nvars();
    // A variable used by one side only cannot occur in the gcd.
    for v in 0..n {
        match (f.involves(v), g.involves(v)) {
            (true, false) => return gcd_rec(&content_in(f, v), g),
            (false, true) => return gcd_rec(f, &content_in(g, v)),
            _ => {}
        }
    }
    // Main variable: the shared one with the smallest maximal degree.
    let v = (0..n)
        .filter(|&v| f.involves(v))
        .min_by_key(|&v| (f.degree_in(v).max(g.degree_in(v)), v))
        .expect("non-constant polynomials use a variable");
    let (fc, gc) = (content_in(f, v), content_in(g, v));
    let c = gcd_rec(&fc, &gc);
    let mut a = f.div_exact(&fc).expect("content divides");
    let mut b = g.div_exact(&gc).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if a.div_exact(&b).is_some() {
            break;
        }
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if !r.involves(v) {
            return c.primitive();
        }
        let rc = content_in(&r, v);
        a = b;
        b = r.div_exact(&rc).expect("content divides").primitive();
    }
    (&c * &b).primitive()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub(crate) fn content_in(f: &Q, v: usize) -> Q {
    let coeffs: Vec<Q> = f.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    let mut acc = coeffs[0].primitive();
    for c in &coeffs[1..] {
        if acc.is_constant() {
            break;
        }
        acc = gcd_rec(&acc, c);
    }
    if acc.is_constant() {
        one_like(f)
    } else {
        acc.primitive()
    }
}

/// Sparse pseudo-remainder of `a` by `b` in `v`.
fn pseudo_rem(a: &Q, b: &Q, v: usize) -> Q {
    let db = b.degree_in(v).unwrap_or(0);
    let bc = b.coefficients_in(v);
    let lb = bc.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v).unwrap_or(0) >= db {
        let dr = r.degree_in(v).unwrap();
        let lr = r.coefficients_in(v).pop().unwrap();
        let mut e = vec![0; r.nvars()];
        e[v] = dr - db;
        let shift = MultiPoly::monomial(Monomial(e), BigRational::one(), r.vars().clone());
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
        if !r.is_zero() {
            r = r.primitive();
        }
    }
    r
}

/// Partial derivative in `v`.
pub fn derivative(f: &Q, v: usize) -> Q {
    let terms: BTreeMap<Monomial, BigRational> = f
        .terms()
        .filter(|(m, _)| m.0[v] > 0)
        .map(|(m, c)| {
            let mut e = m.clone();
            e.0[v] -= 1;
            (e, c * BigRational::from_integer(m.0[v].into()))
        })
        .collect();
    MultiPoly::from_terms(f.vars().clone(), terms.into_iter().map(|(m, c)| (m.0, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Q {
        MultiPoly::parse(s, &["x", "y", "r"]).unwrap()
    }

    #[test]
    fn univariate_and_multivariate() {
        assert_eq!(gcd(&q("x^2 - 1"), &q("x^2 + 2*x + 1")), q("x + 1"));
        let common = q("x*y - r + 2");
        let a = &common * &q("x^2 + y");
        let b = &common * &q("x - y^3 + r");
        assert_eq!(gcd(&a, &b), common);
        assert_eq!(gcd(&q("2*x^3*y"), &q("6*x*y^2 + 4*x^2*y")), q("x*y"));
    }

    #[test]
    fn coprime_and_content() {
        assert_eq!(gcd(&q("x + y"), &q("x - y")), q("1"));
        let a = &q("y^2 + 1") * &q("x + 1");
        let b = &q("y^2 + 1") * &q("x + 2");
        assert_eq!(gcd(&a, &b), q("y^2 + 1"));
        assert_eq!(lcm(&q("x"), &q("x*y")), q("x*y"));
    }

    #[test]
    fn derivative_in_variable() {
        assert_eq!(derivative(&q("x^3*y + 2*y^2"), 1), q("x^3 + 4*y"));
    }
}
