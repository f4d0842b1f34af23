//! Polynomial types over the rationals and the text format they share.

pub mod gcd;
pub mod multi;
pub mod parse;
pub mod rational;
pub mod uni;

use num_rational::BigRational;

pub use gcd::{gcd, gcd_many, lcm};
pub use multi::{vars_of, Embed, Monomial, MultiPoly, Vars};
pub use rational::RationalFunction;
pub use uni::UniPoly;

/// Error from the polynomial text parser; `column` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

/// Divides the largest possible power of `g` out of `f`.
///
/// Returns the cofactor and the exponent. A constant `g` divides every
/// polynomial arbitrarily often and is reported with exponent 0.
pub fn divide_out(f: &MultiPoly<BigRational>, g: &MultiPoly<BigRational>) -> (MultiPoly<BigRational>, u32) {
    assert!(!g.is_zero(), "cannot divide out the zero polynomial");
    if g.is_constant() || f.is_zero() {
        return (f.clone(), 0);
    }
    let mut q = f.clone();
    let mut k = 0;
    while let Some(next) = q.div_exact(g) {
        q = next;
        k += 1;
    }
    let q = q.with_vars(f.vars()).unwrap_or(q);
    (q, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_out_counts_multiplicity() {
        let vars = ["x"];
        let g = MultiPoly::parse("x^2 + 1", &vars).unwrap();
        let p = MultiPoly::parse("x^4 - x^3 + 3*x^2 - x + 1", &vars).unwrap();
        let f = &(&g * &g) * &p;
        assert_eq!(divide_out(&f, &g), (p.clone(), 2));
        assert_eq!(divide_out(&p, &g), (p, 0));
    }
}
