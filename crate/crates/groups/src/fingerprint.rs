//! Finite-quotient fingerprints: isomorphism classes of the quotients of
//! order at most `N`, and comparison of two fingerprints.
//!
//! A quotient `G/K` with `|G/K| <= N` is `G` modulo the core of a subgroup of
//! index at most `N`, and that core is `K` itself. Enumerating normal
//! subgroups of index at most `N` directly therefore yields the same set as
//! taking cores of all low-index subgroups and filtering by core index.

use serde::Serialize;

use crate::finite::{iso_test, FiniteGroup, InvariantVector, ISO_BOUND};
use crate::lowindex::{low_index_tables, LowIndexOptions};
use crate::presentation::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FingerprintOptions {
    pub node_limit: u64,
    pub iso_bound: usize,
}

impl Default for FingerprintOptions {
    fn default() -> Self {
        FingerprintOptions { node_limit: 20_000_000, iso_bound: ISO_BOUND }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteQuotient {
    pub order: usize,
    /// Abelian groups get a name such as `Z/2 x Z/6`; others `None`.
    pub name: Option<String>,
    pub invariants: InvariantVector,
    /// Images of the presentation's generators in the regular action, in
    /// cycle notation on points `1..=order`.
    pub generators: Vec<String>,
    /// Number of normal subgroups with this quotient (auxiliary, never
    /// compared).
    pub multiplicity: usize,
    #[serde(skip)]
    pub group: FiniteGroup,
}

impl FiniteQuotient {
    pub fn new(group: FiniteGroup) -> Self {
        let invariants = group.invariants();
        let generators = group.generator_permutations().iter().map(|p| cycle_notation(p)).collect();
        FiniteQuotient {
            order: group.order(),
            name: abelian_name(&invariants),
            invariants,
            generators,
            multiplicity: 1,
            group,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.invariants.class_count == self.order
    }

    pub fn describe(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("order {} nonabelian", self.order))
    }
}

fn abelian_name(inv: &InvariantVector) -> Option<String> {
    if inv.class_count as u64 != inv.order {
        return None;
    }
    if inv.order == 1 {
        return Some("1".into());
    }
    Some(inv.abelianization.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x "))
}

/// Cycle notation on 1-based points; the identity is `()`.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(',');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = perm[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientFingerprint {
    pub bound: usize,
    pub complete: bool,
    pub search_nodes: u64,
    pub normal_subgroups: usize,
    /// Pairwise non-isomorphic, sorted by invariant vector.
    pub classes: Vec<FiniteQuotient>,
}

impl QuotientFingerprint {
    /// Class of `q` in this fingerprint, if any.
    pub fn find(&self, q: &FiniteQuotient, iso_bound: usize) -> Result<Option<usize>, crate::finite::IsoBoundError> {
        for (i, c) in self.classes.iter().enumerate() {
            if c.invariants == q.invariants && iso_test(&c.group, &q.group, iso_bound)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FingerprintError {
    #[error("bound must be positive")]
    ZeroBound,
    #[error(transparent)]
    Iso(#[from] crate::finite::IsoBoundError),
    #[error("fingerprint of {name} is partial at bound {bound} after {nodes} search nodes")]
    Partial { name: String, bound: usize, nodes: u64 },
}

pub fn quotients_up_to(p: &Presentation, bound: usize) -> Result<QuotientFingerprint, FingerprintError> {
    quotients_up_to_with(p, bound, FingerprintOptions::default())
}

pub fn quotients_up_to_with(
    p: &Presentation,
    bound: usize,
    opts: FingerprintOptions,
) -> Result<QuotientFingerprint, FingerprintError> {
    if bound == 0 {
        return Err(FingerprintError::ZeroBound);
    }
    let r = low_index_tables(p, bound, LowIndexOptions { normal_only: true, node_limit: opts.node_limit });
    let mut quotients: Vec<FiniteQuotient> = r
        .tables
        .iter()
        .map(|t| FiniteQuotient::new(FiniteGroup::from_regular_table(t).expect("normal-only search")))
        .collect();
    // Stable order before deduplication keeps representatives deterministic.
    quotients.sort_by(|a, b| a.invariants.cmp(&b.invariants));
    let mut classes: Vec<FiniteQuotient> = Vec::new();
    let mut start = 0;
    for q in quotients {
        if classes.last().is_none_or(|c| c.invariants != q.invariants) {
            start = classes.len();
        }
        let mut found = false;
        for c in classes[start..].iter_mut() {
            if iso_test(&c.group, &q.group, opts.iso_bound)? {
                c.multiplicity += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push(q);
        }
    }
    Ok(QuotientFingerprint {
        bound,
        complete: r.complete,
        search_nodes: r.nodes,
        normal_subgroups: r.tables.len(),
        classes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The first (ambient) group.
    Group,
    /// The second group, typically a finite-index subgroup of the first.
    Subgroup,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Same quotients of order at most the bound; says nothing beyond it.
    EqualUpToBound,
    Distinguished {
        side: Side,
        distinguisher: Box<FiniteQuotient>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub bound: usize,
    pub group: String,
    pub subgroup: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Classes found only on one side, by invariant vector.
    pub only_in_group: Vec<InvariantVector>,
    pub only_in_subgroup: Vec<InvariantVector>,
    pub group_classes: usize,
    pub subgroup_classes: usize,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self.verdict, Verdict::EqualUpToBound)
    }
}

/// Compares fingerprints at `bound`. Both must be complete. The reported
/// distinguisher is the least class (by invariant vector, which orders by
/// group order first) occurring only on the subgroup side, or failing that
/// only on the group side.
pub fn compare(g: &Presentation, h: &Presentation, bound: usize) -> Result<Comparison, FingerprintError> {
    compare_with(g, h, bound, FingerprintOptions::default())
}

pub fn compare_with(
    g: &Presentation,
    h: &Presentation,
    bound: usize,
    opts: FingerprintOptions,
) -> Result<Comparison, FingerprintError> {
    // Independent searches; the result does not depend on scheduling.
    let (fg, fh) = rayon::join(|| quotients_up_to_with(g, bound, opts), || quotients_up_to_with(h, bound, opts));
    let (fg, fh) = (fg?, fh?);
    for (p, f) in [(g, &fg), (h, &fh)] {
        if !f.complete {
            return Err(FingerprintError::Partial { name: p.name.clone(), bound, nodes: f.search_nodes });
        }
    }
    let only = |a: &QuotientFingerprint, b: &QuotientFingerprint| -> Result<Vec<FiniteQuotient>, FingerprintError> {
        let mut out = Vec::new();
        for q in &a.classes {
            if b.find(q, opts.iso_bound)?.is_none() {
                out.push(q.clone());
            }
        }
        Ok(out)
    };
    let only_g = only(&fg, &fh)?;
    let only_h = only(&fh, &fg)?;
    // Classes are sorted, so the first entry is the least one.
    let verdict = match (only_h.first(), only_g.first()) {
        (Some(q), _) => Verdict::Distinguished { side: Side::Subgroup, distinguisher: Box::new(q.clone()) },
        (None, Some(q)) => Verdict::Distinguished { side: Side::Group, distinguisher: Box::new(q.clone()) },
        (None, None) => Verdict::EqualUpToBound,
    };
    Ok(Comparison {
        bound,
        group: g.name.clone(),
        subgroup: h.name.clone(),
        verdict,
        only_in_group: only_g.iter().map(|q| q.invariants.clone()).collect(),
        only_in_subgroup: only_h.iter().map(|q| q.invariants.clone()).collect(),
        group_classes: fg.classes.len(),
        subgroup_classes: fh.classes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{delta, fixture, free};

    fn names(f: &QuotientFingerprint) -> Vec<String> {
        f.classes.iter().map(FiniteQuotient::describe).collect()
    }

    #[test]
    fn small_fingerprints() {
        let f = quotients_up_to(&free(2), 4).unwrap();
        assert_eq!(names(&f), ["1", "Z/2", "Z/3", "Z/2 x Z/2", "Z/4"]);
        let g4 = quotients_up_to(&fixture("gamma4").unwrap(), 5).unwrap();
        assert_eq!(names(&g4), ["1", "Z/3", "Z/5"]);
        let d4 = quotients_up_to(&delta(4), 4).unwrap();
        assert_eq!(names(&d4), ["1", "Z/2", "Z/4"]);
    }

    #[test]
    fn cycle_notation_is_one_based() {
        assert_eq!(cycle_notation(&[1, 0, 2]), "(1,2)");
        assert_eq!(cycle_notation(&[0, 1]), "()");
        assert_eq!(cycle_notation(&[1, 2, 0, 4, 3]), "(1,2,3)(4,5)");
    }
}
