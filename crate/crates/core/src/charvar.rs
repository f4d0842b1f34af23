//! Specializations of the canonical component `P(T, R) = 1 + R - R^2 - 2T^2 + R T^2`
//! of the figure-eight knot group at the meridian traces `T = 2 cos(k pi / n)`.
//!
//! For each `n` the specialized polynomial `p_{n,k}(R)` is a quadratic over
//! `K = Q(2 cos(pi/n))`; its irreducibility over `K` decides whether the
//! trace field of the orbifold group doubles the degree of `K`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::factor::is_irreducible;
use crate::numfield::{
    dickson_v, field_factor_quadratic, trager_factor_quadratic, AlgebraicNumber, FieldElem, NumFieldError, NumberField,
    QuadraticReport, QuadraticSplit, SplitMethod,
};
use crate::poly::{vars_of, MultiPoly, UniPoly};
use crate::resultant::resultant;
use crate::roots::isolate_real_roots;

type Q = MultiPoly<BigRational>;
type QU = UniPoly<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharVarError {
    #[error("k = {k} is out of range 1..={max}")]
    BadK { k: u32, max: u32 },
    #[error("n = {0} is too small (need n >= 4)")]
    SmallN(u32),
    #[error(
        "n = {0} is not supported: reports cover n = 4, 6, 9 and primes n >= 5 \
         (for n = 8 the orbifold group maps onto the n = 4 group, so admissible \
         specializations no longer determine the representations)"
    )]
    Unsupported(u32),
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The canonical component as a polynomial in `T, R`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalComponent {
    pub poly: Q,
}

impl Default for CanonicalComponent {
    fn default() -> Self {
        Self::new()
    }
}

impl CanonicalComponent {
    pub fn new() -> Self {
        CanonicalComponent { poly: Q::parse("1 + R - R^2 - 2*T^2 + R*T^2", &["T", "R"]).expect("literal") }
    }

    /// Coefficients `[c0, c1, c2]` of `P` as a polynomial in `R`.
    pub fn coefficients_in_r(&self) -> Vec<Q> {
        self.poly.coefficients_in(1)
    }

    /// Discriminant in `R` as a polynomial in `T`: `c1^2 - 4 c0 c2`.
    pub fn discriminant(&self) -> Q {
        let c = self.coefficients_in_r();
        &(&c[1] * &c[1]) - &(&c[0] * &c[2]).scale(&q(4))
    }
}

/// `p_{n,k}(R)` over `K = Q(2 cos(pi/n))`.
#[derive(Debug, Clone)]
pub struct Specialization {
    pub n: u32,
    pub k: u32,
    pub field: NumberField,
    /// `T_{n,k} = V_k(theta)` reduced in `K`, where `theta = 2 cos(pi/n)`.
    pub t: FieldElem,
    /// `T_{n,k}` as a real algebraic number.
    pub t_value: AlgebraicNumber,
    /// `[c0, c1, c2]` with `p = c2 R^2 + c1 R + c0`.
    pub coeffs: [FieldElem; 3],
    /// Order of the meridian image in PSL(2, C): `n / gcd(n, k)`.
    pub meridian_order: u32,
}

impl Specialization {
    /// The meridian image has order at least 4, i.e. `T^2` is neither 0 nor 1.
    pub fn is_admissible(&self) -> bool {
        let t2 = self.field.mul(&self.t, &self.t);
        !t2.is_zero() && t2 != self.field.one()
    }

    pub fn t_squared(&self) -> FieldElem {
        self.field.mul(&self.t, &self.t)
    }

    pub fn t_approx(&self) -> f64 {
        self.field.to_f64(&self.t)
    }
}

pub fn specialize(n: u32, k: u32) -> Result<Specialization, CharVarError> {
    if n < 4 {
        return Err(CharVarError::SmallN(n));
    }
    if k == 0 || k >= n {
        return Err(CharVarError::BadK { k, max: n - 1 });
    }
    let field = NumberField::two_cos_pi_over(n as i64)?;
    let t = field.elem(&dickson_v(k as usize, "t"));
    let t_value = locate(&field, &t)?;
    let t2 = field.mul(&t, &t);
    let c0 = field.sub(&field.one(), &field.scale(&t2, &q(2)));
    let c1 = field.add(&field.one(), &t2);
    let c2 = field.int(-1);
    Ok(Specialization { n, k, field, t, t_value, coeffs: [c0, c1, c2], meridian_order: n / n.gcd(&k) })
}

/// The real algebraic number that `a` is under the embedding of `k`: the
/// isolating interval of its minimal polynomial whose endpoints bracket it.
fn locate(k: &NumberField, a: &FieldElem) -> Result<AlgebraicNumber, CharVarError> {
    let m = k.minimal_polynomial(a, "T");
    let ivs = isolate_real_roots(&m).expect("minimal polynomials are squarefree");
    for iv in ivs {
        let above = k.sign(&k.sub(a, &k.rational(iv.lo.clone()))) > 0;
        let below = k.sign(&k.sub(&k.rational(iv.hi.clone()), a)) > 0;
        if above && below {
            return Ok(AlgebraicNumber::new(m, iv)?);
        }
    }
    Err(NumFieldError::BadEmbedding(m.to_string()).into())
}

/// Discriminant of `p_{n,k}` in `R`.
pub fn discriminant_in_r(spec: &Specialization) -> FieldElem {
    let k = &spec.field;
    let [c0, c1, c2] = &spec.coeffs;
    k.sub(&k.mul(c1, c1), &k.scale(&k.mul(c0, c2), &q(4)))
}

/// `P(T, R)` evaluated in `K` at the specialization's `T`.
pub fn evaluate_component(spec: &Specialization, r: &FieldElem) -> FieldElem {
    let k = &spec.field;
    let p = CanonicalComponent::new();
    let mut acc = k.zero();
    for (m, c) in p.poly.terms() {
        let term = k.mul(&k.pow(&spec.t, m.0[0]), &k.pow(r, m.0[1]));
        acc = k.add(&acc, &k.scale(&term, c));
    }
    acc
}

pub fn is_supported(n: u32) -> bool {
    matches!(n, 4 | 6 | 9) || (n >= 5 && is_prime(n))
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecializationVerdict {
    pub k: u32,
    pub meridian_order: u32,
    /// `T_{n,k}` as an element of `K` (polynomial in the generator `t`).
    pub t: FieldElem,
    pub t_minpoly: String,
    pub t_approx: f64,
    pub polynomial: String,
    pub discriminant: FieldElem,
    pub discriminant_sign: i8,
    pub method: SplitMethod,
    pub irreducible: bool,
    /// The always-Trager test reached the same verdict.
    pub trager_agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExcludedSpecialization {
    pub k: u32,
    pub meridian_order: u32,
    pub t_approx: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub n: u32,
    /// Minimal polynomial of `2 cos(pi/n)`.
    pub field_modulus: String,
    pub field_degree: usize,
    pub admissible: Vec<SpecializationVerdict>,
    pub excluded: Vec<ExcludedSpecialization>,
    pub all_irreducible: bool,
    /// Distinct roots `R` summed over admissible `k`.
    pub sl2_character_count: usize,
    pub psl2_character_count: usize,
    /// `T_{n,n-k} = -T_{n,k}` and the two quadratics coincide.
    pub sign_pairing_holds: bool,
    /// `2 [K : Q]` when `p_{n,1}` is irreducible over `K`.
    pub trace_field_degree: Option<usize>,
    /// `Res_t(m(t), P(t, R))`: its irreducibility over Q independently
    /// certifies the degree of `Q(T, R)` at `k = 1`.
    pub norm_polynomial: String,
    pub norm_irreducible: bool,
}

fn verdict(spec: &Specialization) -> Result<(SpecializationVerdict, QuadraticReport), CharVarError> {
    let rep = field_factor_quadratic(&spec.field, &spec.coeffs)?;
    let trager = trager_factor_quadratic(&spec.field, &spec.coeffs)?;
    let [c0, c1, c2] = &spec.coeffs;
    let v = SpecializationVerdict {
        k: spec.k,
        meridian_order: spec.meridian_order,
        t: spec.t.clone(),
        t_minpoly: spec.t_value.minpoly.to_string(),
        t_approx: spec.t_approx(),
        polynomial: format!("({c2})*R^2 + ({c1})*R + ({c0})"),
        discriminant: rep.discriminant.clone(),
        discriminant_sign: rep.discriminant_sign,
        method: rep.method,
        irreducible: rep.is_irreducible(),
        trager_agrees: trager.is_irreducible() == rep.is_irreducible(),
    };
    Ok((v, rep))
}

fn distinct_roots(rep: &QuadraticReport) -> usize {
    match &rep.split {
        QuadraticSplit::SplitsWithRoots { roots } if roots[0] == roots[1] => 1,
        _ => 2,
    }
}

/// `Res_t(m(t), P(t, R))` as a polynomial in `R`.
fn norm_at_k1(field: &NumberField) -> QU {
    let vars = vars_of(&["t", "R"]);
    let m = Q::from_uni(field.modulus(), vars.clone()).expect("t");
    let p = Q::parse("1 + R - R^2 - 2*t^2 + R*t^2", &["t", "R"]).expect("literal").with_vars(&vars).expect("same");
    let r = resultant(&m, &p, "t").expect("both involve t");
    let i = r.var_index("R").expect("R");
    r.to_uni(i).expect("t eliminated").primitive()
}

pub fn rigidity_report(n: u32) -> Result<RigidityReport, CharVarError> {
    if !is_supported(n) {
        return Err(CharVarError::Unsupported(n));
    }
    let specs: Vec<Specialization> = (1..n).map(|k| specialize(n, k)).collect::<Result<_, _>>()?;
    let field = specs[0].field.clone();
    let mut admissible = Vec::new();
    let mut excluded = Vec::new();
    let mut sl2 = 0;
    let mut k1_irreducible = false;
    for s in &specs {
        if !s.is_admissible() {
            excluded.push(ExcludedSpecialization { k: s.k, meridian_order: s.meridian_order, t_approx: s.t_approx() });
            continue;
        }
        let (v, rep) = verdict(s)?;
        sl2 += distinct_roots(&rep);
        if s.k == 1 {
            k1_irreducible = v.irreducible;
        }
        admissible.push(v);
    }
    let sign_pairing_holds = specs.iter().all(|s| {
        let partner = &specs[(n - s.k - 1) as usize];
        partner.t == field.neg(&s.t) && partner.coeffs == s.coeffs
    });
    let norm = norm_at_k1(&field);
    let all_irreducible = admissible.iter().all(|v| v.irreducible);
    Ok(RigidityReport {
        n,
        field_modulus: field.modulus().to_string(),
        field_degree: field.degree(),
        all_irreducible,
        sl2_character_count: sl2,
        psl2_character_count: sl2 / 2,
        sign_pairing_holds,
        trace_field_degree: k1_irreducible.then(|| 2 * field.degree()),
        norm_irreducible: is_irreducible(&norm),
        norm_polynomial: norm.to_string(),
        admissible,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_identity() {
        let c = CanonicalComponent::new();
        let want = Q::parse("(T^2 - 1)*(T^2 - 5)", &["T", "R"]).unwrap();
        assert_eq!(c.discriminant(), want);
    }

    #[test]
    fn small_specializations() {
        let s = specialize(4, 2).unwrap();
        assert!(s.t.is_zero());
        assert!(!s.is_admissible());
        assert_eq!(s.meridian_order, 2);

        let s = specialize(6, 1).unwrap();
        assert_eq!(s.t_squared(), s.field.int(3));
        assert_eq!(s.coeffs, [s.field.int(-5), s.field.int(4), s.field.int(-1)]);
        assert_eq!(discriminant_in_r(&s), s.field.int(-4));

        let s = specialize(4, 1).unwrap();
        assert_eq!(discriminant_in_r(&s), s.field.int(-3));

        let s = specialize(5, 1).unwrap();
        assert_eq!(s.field.modulus().to_string(), "t^2 - t - 1");
        assert_eq!(s.t_squared(), s.field.elem(&QU::parse("t + 1", "t").unwrap()));

        assert_eq!(specialize(5, 5).unwrap_err(), CharVarError::BadK { k: 5, max: 4 });
    }

    #[test]
    fn unsupported_n() {
        assert!(matches!(rigidity_report(8), Err(CharVarError::Unsupported(8))));
        assert!(is_supported(13) && !is_supported(15));
    }
}
