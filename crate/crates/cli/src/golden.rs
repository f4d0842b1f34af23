//! Known values for named fixtures. A failed check makes the command exit
//! with the mismatch code while still emitting the envelope.

use rigidity_core::charvar::RigidityReport;
use rigidity_core::repvar::{NumericReport, RigidityCertificate};
use rigidity_groups::fingerprint::{Comparison, Side, Verdict};
use rigidity_groups::lowindex::SubgroupListing;

use crate::envelope::Check;

pub const X_POLY: &str = "x^4 - x^3 + 3*x^2 - x + 1";
pub const Y_POLYS: [&str; 2] = ["y^4 + y^3 + 3*y^2 + y + 1", "y^4 - y^3 + 3*y^2 - y + 1"];
pub const R_POLY: &str = "r^4 - 9*r^2 + 36";
pub const CHARACTER_POLY: &str = "X^2 - X + 1";

pub fn certificate(cert: &RigidityCertificate, numeric: Option<&NumericReport>) -> Vec<Check> {
    let mut ys: Vec<String> = cert.y_polys.iter().map(|p| p.to_string()).collect();
    ys.sort();
    let mut checks = vec![
        Check::new("x_poly", X_POLY, cert.x_poly.to_string()),
        Check::new("y_polys", Y_POLYS, ys),
        Check::new("r_poly", R_POLY, cert.r_poly.to_string()),
        Check::new("character_polys", [CHARACTER_POLY], cert.character_polys.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        Check::new("routes_agree", true, cert.routes_agree),
    ];
    if let Some(n) = numeric {
        checks.push(Check::new("residuals_vanish", true, n.passed));
        checks.push(Check::new("diagonal_has_no_representation", true, n.diagonal_has_no_representation));
    }
    checks
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn charvar(r: &RigidityReport) -> Vec<Check> {
    let n = r.n;
    let mut checks = vec![Check::new("all_irreducible", true, r.all_irreducible)];
    if is_prime(n) {
        checks.push(Check::new("trace_field_degree", Some(n as usize - 1), r.trace_field_degree));
        checks.push(Check::new("psl2_character_count", n as usize - 1, r.psl2_character_count));
    }
    if n == 9 {
        let ks: Vec<u32> = r.admissible.iter().map(|v| v.k).collect();
        checks.push(Check::new("admissible_k", [1, 2, 4, 5, 7, 8], ks));
    }
    checks
}

/// Abelian invariants of named fixtures.
pub fn abelianization(fixture: &str, invariants: &[i64]) -> Vec<Check> {
    let expected: &[i64] = match fixture {
        "gamma4" | "fib8" => &[3, 15],
        "delta4" => &[4],
        _ => return Vec::new(),
    };
    vec![Check::new("abelian_invariants", expected, invariants)]
}

/// Group orders of named fixtures. The published value for `delta2` is 8;
/// enumeration gives 10, so this check is expected to fail.
pub fn order(fixture: &str, order: Option<usize>, histogram: Option<&[(u64, usize)]>) -> Vec<Check> {
    match fixture {
        "delta2" => vec![
            Check::new("order", Some(8), order),
            // Dihedral of order 8: identity, five involutions, two elements of order 4.
            Check::new("order_histogram", Some([(1, 1), (2, 5), (4, 2)]), histogram),
        ],
        _ => Vec::new(),
    }
}

pub fn subgroups(fixture: &str, listing: &SubgroupListing, ints: impl Fn(&[num_bigint::BigInt]) -> Vec<i64>) -> Vec<Check> {
    if fixture != "gamma-empty" {
        return Vec::new();
    }
    let mut checks = Vec::new();
    if listing.max_index >= 4 {
        let four: Vec<Vec<i64>> = listing.subgroups.iter().filter(|s| s.index == 4).map(|s| ints(&s.invariants)).collect();
        // A normal-only listing cannot be compared with the class count.
        if four.len() >= 11 || listing.subgroups.iter().any(|s| !s.normal) {
            checks.push(Check::new("index_4_classes", 11, four.len()));
        }
        checks.push(Check::new("index_4_cyclic_of_order_4", 1, four.iter().filter(|v| v.as_slice() == [4]).count()));
    }
    if listing.max_index >= 8 {
        let found = listing.subgroups.iter().any(|s| s.index == 8 && s.normal && ints(&s.invariants) == [3, 6]);
        checks.push(Check::new("index_8_normal_with_3_6", true, found));
    }
    checks
}

pub fn luck(fixture: &str, indices: &[usize], values: &[String]) -> Vec<Check> {
    match fixture {
        "free2" => {
            let expected: Vec<String> = indices.iter().map(|&d| format!("{}/{}", d + 1, d)).collect();
            vec![Check::new("values", expected, values)]
        }
        "gamma4" => vec![Check::new("values", vec!["0"; values.len()], values)],
        _ => Vec::new(),
    }
}

pub fn comparison(group: &str, subgroup: &str, c: &Comparison) -> Vec<Check> {
    let summary = match &c.verdict {
        Verdict::EqualUpToBound => "equal".to_string(),
        Verdict::Distinguished { side, distinguisher } => {
            let side = match side {
                Side::Group => "group",
                Side::Subgroup => "subgroup",
            };
            format!("{} on {side} side", distinguisher.describe())
        }
    };
    match (group, subgroup) {
        ("delta4", "gamma4") if c.bound == 3 => vec![Check::new("verdict", "Z/3 on subgroup side", summary)],
        ("b1", "b2") | ("b2", "b1") => vec![Check::new("verdict", "equal", summary)],
        (g, h) if g == h => vec![Check::new("verdict", "equal", summary)],
        _ => Vec::new(),
    }
}
