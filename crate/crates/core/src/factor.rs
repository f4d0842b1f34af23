//! Factorization of univariate polynomials over Q.
//!
//! Pipeline: square-free decomposition (Yun), rational-root extraction,
//! then Zassenhaus: factor modulo a good prime, Hensel-lift the modular
//! factors, and recombine subsets over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::modp::{Field, Fp};
use crate::poly::UniPoly;

type QU = UniPoly<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    Zero,
}

/// `unit * prod(factor^multiplicity)`; factors are irreducible over Q,
/// integer-primitive, with positive leading coefficient, sorted by degree
/// then coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(QU, u32)>,
}

impl Factorization {
    pub fn expand(&self, var: &str) -> QU {
        let mut acc = QU::constant(var, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.with_var(var).pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Yun's square-free decomposition: `[(a_1, 1), (a_2, 2), ...]` with
/// `f = c * prod a_i^i`, each `a_i` squarefree and integer-primitive.
/// Trivial `a_i` are omitted.
pub fn squarefree_decomposition(f: &QU) -> Vec<(QU, u32)> {
    if f.deg() == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if a.deg() > 0 {
            out.push((a.primitive(), i));
        }
        i += 1;
    }
    out
}

pub fn factor_univariate(f: &QU) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::Zero);
    }
    let var = f.var().to_string();
    let mut factors: Vec<(QU, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for g in factor_squarefree_integer(&to_int(&part)) {
            factors.push((from_int(&var, &g), mult));
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut denom = BigRational::one();
    for (g, m) in &factors {
        denom *= num_traits::pow(g.leading_coeff(), *m as usize);
    }
    Ok(Factorization { unit: f.leading_coeff() / denom, factors })
}

pub fn is_irreducible(f: &QU) -> bool {
    f.deg() > 0 && factor_univariate(f).map(|fz| fz.is_irreducible()).unwrap_or(false)
}

/// Distinct irreducible factors (multiplicities dropped).
pub fn irreducible_factors(f: &QU) -> Result<Vec<QU>, FactorError> {
    Ok(factor_univariate(f)?.factors.into_iter().map(|(g, _)| g).collect())
}

fn cmp_poly(a: &QU, b: &QU) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for k in (0..=a.deg()).rev() {
            let o = a.coeff(k).cmp(&b.coeff(k));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

// ---------------------------------------------------------------------
// Dense integer polynomials, low degree first, no trailing zeros.

type ZP = Vec<BigInt>;

fn to_int(f: &QU) -> ZP {
    f.integer_coeffs()
}

fn from_int(var: &str, f: &ZP) -> QU {
    QU::from_integer_coeffs(var, f)
}

fn z_trim(mut a: ZP) -> ZP {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn z_mul(a: &ZP, b: &ZP) -> ZP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

/// Exact quotient `a / b` over Z, if it exists.
fn z_div_exact(a: &ZP, b: &ZP) -> Option<ZP> {
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let lb = b.last()?;
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (c, rem) = r[k].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[k - db + j] -= &c * y;
        }
        q[k - db] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| z_trim(q))
}

fn z_primitive(a: &ZP) -> ZP {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    if g.is_zero() {
        return a.clone();
    }
    a.iter().map(|c| c / &g * &sign).collect()
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c.mod_floor(m);
    if &r + &r > *m {
        r -= m;
    }
    r
}

fn to_fp(a: &ZP, k: Field) -> Fp {
    let p = BigInt::from(k.p);
    k.trim(a.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
}

fn from_fp(a: &Fp) -> ZP {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

// ---------------------------------------------------------------------

/// Irreducible factors over Z of a squarefree primitive polynomial with
/// positive leading coefficient.
fn factor_squarefree_integer(f: &ZP) -> Vec<ZP> {
    let mut f = z_primitive(f);
    let mut out = Vec::new();
    // Powers of x first: squarefree means at most one.
    if f.len() > 1 && f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f = f[1..].to_vec();
    }
    for root in rational_roots(&f) {
        let lin = vec![-root.numer().clone(), root.denom().clone()];
        f = z_div_exact(&f, &lin).expect("root gives a factor");
        out.push(lin);
    }
    if f.len() > 1 {
        out.extend(zassenhaus(&f));
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d * d != n {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    Some(divs)
}

/// Rational roots of an integer polynomial with nonzero constant term; skipped
/// (empty) when the constant or leading coefficient is too large to enumerate.
fn rational_roots(f: &ZP) -> Vec<BigRational> {
    if f.len() < 2 {
        return Vec::new();
    }
    let (Some(ps), Some(qs)) = (small_divisors(&f[0]), small_divisors(f.last().unwrap())) else {
        return Vec::new();
    };
    if ps.len() * qs.len() > 20_000 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut g = f.clone();
    for &p in &ps {
        for &q in &qs {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let num = BigInt::from(p) * sign;
                let den = BigInt::from(q);
                if g.len() < 2 {
                    return roots;
                }
                let lin = vec![-num.clone(), den.clone()];
                if let Some(h) = z_div_exact(&g, &lin) {
                    g = h;
                    roots.push(BigRational::new(num, den));
                }
            }
        }
    }
    roots
}

fn primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Zassenhaus factorization of a squarefree primitive polynomial of degree >= 1.
fn zassenhaus(f: &ZP) -> Vec<ZP> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let lc = f.last().unwrap().clone();
    // Try several good primes and keep the one with the fewest factors.
    let mut best: Option<(Field, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in primes().skip(2) {
        if tried >= 6 {
            break;
        }
        let k = Field::new(p);
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = k.monic(&to_fp(f, k));
        if !k.is_squarefree(&fp) {
            continue;
        }
        tried += 1;
        let facs = k.factor_squarefree(&fp, &mut rng);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((k, facs));
        }
    }
    let (k, facs) = best.expect("some prime is good for a squarefree polynomial");
    let p = BigInt::from(k.p);

    // Coefficient bound for any factor times lc: |lc| * 2^n * ||f||_2.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << n) * norm2;
    let mut e = 1u32;
    let mut modulus = p.clone();
    while modulus <= &bound * 2 {
        modulus *= &p;
        e += 1;
    }
    let lifted = hensel_lift(f, &facs, k, e);
    recombine(f, lifted, &modulus)
}

/// Lifts the monic modular factorization of `lc^-1 f` to modulus `p^e`.
fn hensel_lift(f: &ZP, facs: &[Fp], k: Field, e: u32) -> Vec<ZP> {
    let p = BigInt::from(k.p);
    let modulus = num_traits::pow(p.clone(), e as usize);
    let lc = f.last().unwrap();
    let lc_inv = lc.modinv(&modulus).expect("prime does not divide lc");
    let monic: ZP = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    lift_tree(&monic, facs, k, e)
}

fn lift_tree(target: &ZP, facs: &[Fp], k: Field, e: u32) -> Vec<ZP> {
    if facs.len() == 1 {
        return vec![target.clone()];
    }
    let mid = facs.len() / 2;
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, g| k.poly_mul(&acc, g));
    let g0 = prod(&facs[..mid]);
    let h0 = prod(&facs[mid..]);
    let (g, h) = lift_pair(target, &g0, &h0, k, e);
    let mut out = lift_tree(&g, &facs[..mid], k, e);
    out.extend(lift_tree(&h, &facs[mid..], k, e));
    out
}

/// Linear Hensel lifting of `target = g0 h0 mod p` (all monic) to `p^e`.
fn lift_pair(target: &ZP, g0: &Fp, h0: &Fp, k: Field, e: u32) -> (ZP, ZP) {
    let p = BigInt::from(k.p);
    let (one, s, t) = k.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pj = p.clone();
    for _ in 1..e {
        let next = &pj * &p;
        let gh = z_mul(&g, &h);
        let n = target.len().max(gh.len());
        let err: ZP = (0..n)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                let d = (a - b).mod_floor(&next);
                debug_assert!((&d % &pj).is_zero());
                d / &pj
            })
            .collect();
        let ep = to_fp(&err, k);
        if !ep.is_empty() {
            let (q, tau) = k.div_rem(&k.poly_mul(&ep, &t), g0);
            let sigma = k.poly_add(&k.poly_mul(&ep, &s), &k.poly_mul(&q, h0));
            g = add_scaled(&g, &from_fp(&tau), &pj, &next);
            h = add_scaled(&h, &from_fp(&sigma), &pj, &next);
        }
        pj = next;
    }
    (g, h)
}

fn add_scaled(a: &ZP, b: &ZP, scale: &BigInt, m: &BigInt) -> ZP {
    let n = a.len().max(b.len());
    z_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                let y = b.get(i).cloned().unwrap_or_default();
                (x + y * scale).mod_floor(m)
            })
            .collect(),
    )
}

fn recombine(f: &ZP, mut lifted: Vec<ZP>, modulus: &BigInt) -> Vec<ZP> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        for subset in Combinations::new(lifted.len(), s) {
            let lc = f.last().unwrap().clone();
            // Constant-term filter before the full product.
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(modulus));
            let c0 = sym_mod(&c0, modulus);
            if c0.is_zero() || !(&f[0] * &lc % &c0).is_zero() {
                continue;
            }
            let mut cand = vec![lc.clone()];
            for &i in &subset {
                cand = z_mul(&cand, &lifted[i]).iter().map(|c| c.mod_floor(modulus)).collect();
            }
            let cand: ZP = z_trim(cand.iter().map(|c| sym_mod(c, modulus)).collect());
            let g = z_primitive(&cand);
            if let Some(q) = z_div_exact(&f, &g) {
                out.push(g);
                f = z_primitive(&q);
                let mut keep = Vec::new();
                for (i, l) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(l);
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { idx: (0..k).collect(), n, done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QU {
        QU::parse(s, "x").unwrap()
    }

    fn names(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|(g, m)| (g.to_string(), *m)).collect()
    }

    #[test]
    fn difference_of_squares() {
        let fz = factor_univariate(&p("x^2 - 1")).unwrap();
        assert_eq!(names(&fz), vec![("x - 1".into(), 1), ("x + 1".into(), 1)]);
    }

    #[test]
    fn irreducible_quartics() {
        assert!(is_irreducible(&p("x^4 - x^3 + 3*x^2 - x + 1")));
        assert!(is_irreducible(&QU::parse("r^4 - 9*r^2 + 36", "r").unwrap()));
        assert!(!is_irreducible(&p("x^4 + 4")));
    }

    #[test]
    fn swinnerton_dyer_style_input() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        assert!(is_irreducible(&p("x^4 - 10*x^2 + 1")));
    }

    #[test]
    fn multiplicities_and_unit() {
        let f = p("-6*x^5 + 6*x^4 - 6*x^3 + 6*x^2");
        let fz = factor_univariate(&f).unwrap();
        assert_eq!(fz.expand("x"), f);
        assert_eq!(names(&fz), vec![("x - 1".into(), 1), ("x".into(), 2), ("x^2 + 1".into(), 1)]);
        assert_eq!(fz.unit, BigRational::from_integer((-6).into()));
    }

    #[test]
    fn larger_products_round_trip() {
        let parts = ["x^2 + x + 1", "x^2 - x + 1", "x^4 - x^3 + 3*x^2 - x + 1", "3*x^3 - 7*x + 11", "x^5 - x - 1"];
        let mut f = p("1");
        for s in parts {
            f = &f * &p(s);
        }
        f = &f * &p("x^2 + 1").pow(3);
        let fz = factor_univariate(&f).unwrap();
        assert_eq!(fz.expand("x"), f);
        assert_eq!(fz.factors.len(), 6);
        assert!(fz.factors.iter().all(|(g, _)| is_irreducible(g)));
    }
}
