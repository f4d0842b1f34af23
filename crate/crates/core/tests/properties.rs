//! Randomized checks of the exact layer against independent oracles:
//! determinantal divisors for the Smith form, root products for resultants,
//! and the rational root test for small factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rigidity_core::exact::{snf, IntMatrix};
use rigidity_core::factor::factor_univariate;
use rigidity_core::resultant::{resultant, resultant_int, resultant_uni};
use rigidity_core::{BigRational, QPoly, QUniPoly};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn to_int_matrix(rows: &[Vec<i64>]) -> IntMatrix<BigInt> {
    let cols = rows[0].len();
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), cols).unwrap()
}

/// Laplace expansion; small matrices only.
fn laplace(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    let mut total = 0;
    for j in 0..m.len() {
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * laplace(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k x k minors.
fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i128 {
    let mut g: i128 = 0;
    for rs in subsets(m.len(), k) {
        for cs in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
            g = g.gcd(&laplace(&sub));
        }
    }
    g
}

fn snf_divisibility_and_reconstruction(rows: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let m = to_int_matrix(&rows);
    let res = snf(&m, true);
    let d = &res.diagonal;
    prop_assert_eq!(d.len(), m.rows().min(m.cols()));
    for w in d.windows(2) {
        prop_assert!(!w[0].is_negative());
        // d_i | d_{i+1}, zeros last.
        let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        prop_assert!(divides);
    }
    let (l, r) = res.transforms.clone().unwrap();
    prop_assert!(l.determinant().unwrap().abs().is_one());
    prop_assert!(r.determinant().unwrap().abs().is_one());
    let lmr = l.mul(&m).unwrap().mul(&r).unwrap();
    prop_assert_eq!(lmr, res.diagonal_matrix(m.rows(), m.cols()));
    // d_1 * ... * d_k equals the gcd of the k x k minors.
    let mut prod = BigInt::one();
    for (k, dk) in d.iter().enumerate() {
        prod *= dk;
        prop_assert_eq!(prod.clone(), BigInt::from(determinantal_divisor(&rows, k + 1)));
    }
    Ok(())
}

fn uni(coeffs: &[i64]) -> QUniPoly {
    QUniPoly::from_ints("x", coeffs)
}

fn eval(p: &QUniPoly, x: i64) -> BigRational {
    let x = BigRational::from_integer(x.into());
    p.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 2..=max_deg + 1).prop_filter("leading coefficient", |c| *c.last().unwrap() != 0)
}

type Coeffs = Vec<i64>;

fn multiplicative_input() -> impl Strategy<Value = (Coeffs, Coeffs, Coeffs)> {
    (nonconstant(3), nonconstant(3), nonconstant(3))
}

/// Res(f g, h) = Res(f, h) Res(g, h).
fn resultant_multiplicative((f, g, h): (Coeffs, Coeffs, Coeffs)) -> Result<(), TestCaseError> {
    let (f, g, h) = (uni(&f), uni(&g), uni(&h));
    let fg = &f * &g;
    let lhs = resultant_uni(&fg, &h).unwrap();
    let rhs = resultant_uni(&f, &h).unwrap() * resultant_uni(&g, &h).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn root_product_input() -> impl Strategy<Value = (i64, Coeffs, Coeffs)> {
    (prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), prop::collection::vec(-5i64..=5, 1..=4), nonconstant(4))
}

/// For f = c (x - a_1) ... (x - a_m): Res(f, g) = c^deg(g) g(a_1) ... g(a_m).
fn resultant_root_product((c, roots, g): (i64, Coeffs, Coeffs)) -> Result<(), TestCaseError> {
    let mut f = uni(&[c]);
    for &a in &roots {
        f = &f * &uni(&[-a, 1]);
    }
    let g = uni(&g);
    let mut expected = num_traits::pow(BigRational::from_integer(c.into()), g.deg());
    for &a in &roots {
        expected *= eval(&g, a);
    }
    prop_assert_eq!(resultant_uni(&f, &g).unwrap(), expected.clone());
    // The integer Sylvester routine agrees.
    let ints = |p: &QUniPoly| p.coeffs().iter().map(|q| q.to_integer()).collect::<Vec<_>>();
    prop_assert_eq!(BigRational::from_integer(resultant_int(&ints(&f), &ints(&g))), expected);
    Ok(())
}

type Terms = Vec<(u32, u32, i64)>;

fn evaluation_input() -> impl Strategy<Value = (Terms, Terms, i64)> {
    let terms = || prop::collection::vec((0u32..=2, 0u32..=2, -4i64..=4), 1..=5);
    (terms(), terms(), -3i64..=3)
}

/// Evaluating x before or after eliminating y gives the same value when
/// the leading coefficients in y do not vanish.
fn resultant_commutes_with_evaluation((f, g, a): (Terms, Terms, i64)) -> Result<(), TestCaseError> {
    let vars = rigidity_core::poly::vars_of(&["x", "y"]);
    let build = |terms: &[(u32, u32, i64)]| {
        QPoly::from_terms(
            vars.clone(),
            terms.iter().map(|&(i, j, c)| (vec![i, j], BigRational::from_integer(c.into()))),
        )
    };
    let (fp, gp) = (build(&f), build(&g));
    let y = 1;
    prop_assume!(fp.degree_in(y).unwrap_or(0) > 0 && gp.degree_in(y).unwrap_or(0) > 0);
    let av = BigRational::from_integer(a.into());
    let lead = |p: &QPoly| p.coefficients_in(y).last().unwrap().eval_var(0, &av);
    prop_assume!(!lead(&fp).is_zero() && !lead(&gp).is_zero());
    let after = resultant(&fp, &gp, "y").unwrap().eval_var(0, &av);
    let before = resultant(&fp.eval_var(0, &av), &gp.eval_var(0, &av), "y").unwrap();
    prop_assert_eq!(after.constant_term(), before.constant_term());
    prop_assert!(after.is_constant() && before.is_constant());
    Ok(())
}

/// Degree at most 3 over Q: irreducible iff no rational root.
fn has_rational_root(p: &QUniPoly) -> bool {
    let c: Vec<BigInt> = p.integer_coeffs();
    let (a0, an) = (c[0].abs(), c.last().unwrap().abs());
    if a0.is_zero() {
        return true;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n: i64 = n.try_into().unwrap();
        (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect()
    };
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for s in [1, -1] {
                let r = BigRational::new(&num * s, den.clone());
                let v = p.coeffs().iter().rev().fold(BigRational::zero(), |acc, k| acc * &r + k);
                if v.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn factorization_input() -> impl Strategy<Value = (Vec<(Coeffs, u32)>, i64)> {
    (prop::collection::vec((nonconstant(3), 1u32..=3), 1..=3), prop::sample::select(vec![-2i64, -1, 1, 3]))
}

fn factorization_round_trip((parts, unit): (Vec<(Coeffs, u32)>, i64)) -> Result<(), TestCaseError> {
    let mut f = uni(&[unit]);
    for (coeffs, m) in &parts {
        f = &f * &uni(coeffs).pow(*m);
    }
    let fz = factor_univariate(&f).unwrap();
    prop_assert_eq!(fz.expand("x"), f.clone());
    let mut degree = 0;
    for (g, m) in &fz.factors {
        prop_assert!(g.deg() > 0);
        prop_assert!(g.is_integer_primitive());
        prop_assert!(g.leading_coeff() > BigRational::zero());
        prop_assert!(f.div_exact(&g.pow(*m)).is_some());
        if g.deg() <= 3 {
            prop_assert!(g.deg() == 1 || !has_rational_root(g), "{} is reducible", g);
        }
        degree += g.deg() * *m as usize;
    }
    prop_assert_eq!(degree, f.deg());
    // Distinct factors.
    for (i, (g, _)) in fz.factors.iter().enumerate() {
        for (h, _) in &fz.factors[i + 1..] {
            prop_assert!(g != h);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(cases(1000))]

    #[test]
    fn snf_divisibility_chain_and_reconstruction(rows in matrix()) {
        snf_divisibility_and_reconstruction(rows)?;
    }

    #[test]
    fn resultant_is_multiplicative(input in multiplicative_input()) {
        resultant_multiplicative(input)?;
    }

    #[test]
    fn resultant_is_a_root_product(input in root_product_input()) {
        resultant_root_product(input)?;
    }

    #[test]
    fn resultant_evaluation_commutes(input in evaluation_input()) {
        resultant_commutes_with_evaluation(input)?;
    }

    #[test]
    fn factorization_round_trips(input in factorization_input()) {
        factorization_round_trip(input)?;
    }
}

/// Runs one property outside the test harness.
pub fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    property: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    // No source file to key regressions on outside the harness.
    let config = ProptestConfig { failure_persistence: None, ..self::cases(cases) };
    proptest::test_runner::TestRunner::new(config).run(&strategy, property).map_err(|e| e.to_string())
}

/// Every property in this file, for callers that run them directly.
pub fn suite(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "snf divisibility chain and reconstruction",
            run_property(cases, matrix(), snf_divisibility_and_reconstruction),
        ),
        ("resultant multiplicativity", run_property(cases, multiplicative_input(), resultant_multiplicative)),
        ("resultant root product", run_property(cases, root_product_input(), resultant_root_product)),
        (
            "resultant commutes with evaluation",
            run_property(cases, evaluation_input(), resultant_commutes_with_evaluation),
        ),
        ("factorization round trip", run_property(cases, factorization_input(), factorization_round_trip)),
    ]
}
