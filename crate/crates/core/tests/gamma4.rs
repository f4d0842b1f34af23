//! End-to-end elimination for the two-relator group against transcribed
//! reference polynomials. Comparisons are up to a rational unit, since
//! normalizations of displayed polynomials are not canonical.

use std::sync::OnceLock;
use std::time::Instant;

use rigidity_core::repvar::{
    gamma4_pipeline, numeric_check, relation_residual, standard_assignment, RigidityCertificate,
};
use rigidity_core::{GroupWord, QPoly, QUniPoly, RationalFunction};

mod reference;
use reference::{CONSTRAINT, R12, R_SOLVED, S1, S2, S3, S4};

const V: [&str; 3] = ["x", "y", "r"];

fn cert() -> &'static RigidityCertificate {
    static CERT: OnceLock<RigidityCertificate> = OnceLock::new();
    CERT.get_or_init(|| {
        let t = Instant::now();
        let c = gamma4_pipeline().expect("pipeline succeeds");
        eprintln!("pipeline: {:?}", t.elapsed());
        c
    })
}

fn mp(s: &str) -> QPoly {
    QPoly::parse(s, &V).unwrap()
}

fn same_up_to_unit(a: &QPoly, b: &QPoly) -> bool {
    a.unit_ratio(b).is_some()
}

#[test]
fn first_relator_entry_and_solution() {
    let c = cert();
    assert_eq!(c.solved_from, (0, 1));
    assert!(same_up_to_unit(c.r_numerator(0, 1), &mp(R12)));
    assert_eq!(c.r_solution, RationalFunction::parse(R_SOLVED, &V).unwrap());
}

#[test]
fn constraint_and_discarded_factors() {
    let c = cert();
    assert!(same_up_to_unit(&c.constraint, &mp(CONSTRAINT)));
    let cof: Vec<(String, u32)> = c.constraint_cofactors.iter().map(|(p, k)| (p.to_string(), *k)).collect();
    assert_eq!(cof, vec![("x^2 + 1".to_string(), 1), ("x^2 + x + 1".to_string(), 1)]);
}

#[test]
fn second_relator_numerators() {
    let c = cert();
    for (got, want) in c.s_numerators.iter().zip([S1, S2, S3, S4]) {
        assert!(same_up_to_unit(got, &mp(want)), "{got}");
    }
}

#[test]
fn eliminated_polynomials() {
    let c = cert();
    let u = |s: &str, v: &str| QUniPoly::parse(s, v).unwrap();
    assert_eq!(c.x_poly, u("x^4 - x^3 + 3*x^2 - x + 1", "x"));
    let mut ys = c.y_polys.clone();
    ys.sort_by_key(|p| p.to_string());
    assert_eq!(ys, vec![u("y^4 + y^3 + 3*y^2 + y + 1", "y"), u("y^4 - y^3 + 3*y^2 - y + 1", "y")]);
    assert!(c.y_poly_equals_x_poly);
    assert_eq!(c.r_poly, u("r^4 - 9*r^2 + 36", "r"));
    assert_eq!(c.character_polys, vec![u("X^2 - X + 1", "X")]);
    assert!(c.routes_agree);
    assert_eq!(c.x_eliminants.iter().map(|e| e.degree).collect::<Vec<_>>(), vec![56, 32, 52, 46]);
}

#[test]
fn numeric_residuals_vanish() {
    let t = Instant::now();
    let report = numeric_check(cert(), 30);
    eprintln!("numeric: {:?}\n{}", t.elapsed(), serde_json::to_string_pretty(&report).unwrap());
    assert!(report.passed, "{:?}", report.failure);
    for r in &report.residuals {
        assert!(r.max_log10.map_or(true, |l| l < -20.0));
    }
    for (_, r) in &report.diagonal_cases {
        assert!(r.max_log10.is_some_and(|l| l > -3.0));
    }
}

#[test]
fn certificate_serializes_every_polynomial() {
    let v = serde_json::to_value(cert()).unwrap();
    assert_eq!(v["x_poly"], "x^4 - x^3 + 3*x^2 - x + 1");
    assert_eq!(v["r_poly"], "r^4 - 9*r^2 + 36");
    assert_eq!(v["s_numerators"].as_array().unwrap().len(), 4);
}

/// Different splits of one relator give residuals that differ by a right
/// factor of determinant 1: `w1 - w2^-1 = (rho(w) - 1) w2^-1`.
#[test]
fn residual_split_independence() {
    let a = standard_assignment();
    let w = GroupWord::parse("b a^-2 b a^-1 b^2 a b^2 a^-1").unwrap();
    let base = relation_residual(&w, 7, &a).unwrap();
    let w2_base = rigidity_core::repvar::eval_word(&w.split_at(7).unwrap().1, &a).unwrap();
    for k in [0, 3, 11] {
        let other = relation_residual(&w, k, &a).unwrap();
        let w2 = rigidity_core::repvar::eval_word(&w.split_at(k).unwrap().1, &a).unwrap();
        assert_eq!(other.matrix, base.matrix.mul(&w2_base).mul(&w2.adjugate()));
    }
}
