//! Finitely presented groups: presentations, coset enumeration, low-index
//! subgroups, Reidemeister–Schreier rewriting, and finite-quotient
//! fingerprints.

pub mod coset;
pub mod finite;
pub mod fingerprint;
pub mod lowindex;
pub mod luck;
pub mod presentation;
pub mod rs;

pub use fingerprint::{compare, quotients_up_to, Comparison, FiniteQuotient, QuotientFingerprint, Side, Verdict};
pub use finite::{iso_test, FiniteGroup, InvariantVector};
pub use coset::{coset_enumerate, group_order, CosetTable, EnumStatus, Strategy};
pub use lowindex::{low_index_subgroups, low_index_tables, LowIndexOptions, SubgroupRecord};
pub use luck::{cyclic_cover_chain, luck_sequence};
pub use presentation::{fixture, Presentation, PresentationError};
pub use rs::{reidemeister_schreier, subgroup_abelianization};

/// Integers as JSON numbers when they fit, strings otherwise.
pub(crate) fn serialize_ints<S: serde::Serializer>(v: &[num_bigint::BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(i) => seq.serialize_element(&i)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}
