use num_bigint::BigInt;
use num_rational::BigRational;
use rigidity_core::GroupWord;
use rigidity_groups::fingerprint::Side;
use rigidity_groups::finite::FiniteGroup;
use rigidity_groups::lowindex::is_normal;
use rigidity_groups::presentation::{delta, fibonacci, free};
use rigidity_groups::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn fixture_abelianizations() {
    assert_eq!(fixture("gamma4").unwrap().abelianization(), ints(&[3, 15]));
    assert_eq!(fixture("fib8").unwrap().abelianization(), ints(&[3, 15]));
    assert_eq!(fixture("delta4").unwrap().abelianization(), ints(&[4]));
    assert_eq!(fixture("figure8").unwrap().abelianization(), ints(&[0]));
    assert_eq!(fixture("gamma-empty").unwrap().abelianization(), ints(&[2, 2, 2]));
    // x^5 = 1 from t^-1 x t = x^6, then x^25 adds nothing.
    assert_eq!(fixture("b1").unwrap().abelianization(), ints(&[5, 0]));
    assert_eq!(fixture("b2").unwrap().abelianization(), ints(&[5, 0]));
}

#[test]
fn delta2_is_dihedral_of_order_ten() {
    let d2 = delta(2);
    for strategy in [Strategy::Hlt, Strategy::Felsch] {
        let t = coset_enumerate(&d2, &[], 100_000, strategy);
        assert_eq!(t.index(), 10);
        let g = FiniteGroup::from_regular_table(&t).unwrap();
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 5), (5, 4)]);
        assert_eq!(g.abelianization(), vec![2]);
    }
}

#[test]
fn delta3_exceeds_the_default_limit() {
    let t = coset_enumerate(&delta(3), &[], 100_000, Strategy::Hlt);
    assert_eq!(t.status(), EnumStatus::Overflowed { limit: 100_000 });
}

#[test]
fn gamma_empty_index_four_classes() {
    let p = fixture("gamma-empty").unwrap();
    let listing = low_index_subgroups(&p, 4);
    assert!(listing.complete);
    let four: Vec<_> = listing.subgroups.iter().filter(|s| s.index == 4).collect();
    assert_eq!(four.len(), 11);
    let cyclic: Vec<_> = four.iter().filter(|s| s.invariants == ints(&[4])).collect();
    assert_eq!(cyclic.len(), 1);
    let mut counts = std::collections::BTreeMap::new();
    for s in &four {
        *counts.entry(s.invariants.clone()).or_insert(0) += 1;
    }
    assert_eq!(counts[&ints(&[2, 2])], 5);
    assert_eq!(counts[&ints(&[2, 6])], 2);
    assert_eq!(counts[&ints(&[2, 10])], 2);
    assert_eq!(counts[&ints(&[20])], 1);
}

#[test]
fn gamma_empty_index_eight_normal_subgroups() {
    let p = fixture("gamma-empty").unwrap();
    let r = low_index_tables(&p, 8, LowIndexOptions { normal_only: true, ..Default::default() });
    assert!(r.complete);
    let invs: Vec<Vec<BigInt>> =
        r.tables.iter().filter(|t| t.index() == 8).map(|t| subgroup_abelianization(&p, t).unwrap()).collect();
    assert!(invs.contains(&ints(&[3, 6])), "{invs:?}");
}

#[test]
fn normal_search_matches_filtered_listing() {
    for (name, n) in [("gamma-empty", 8), ("delta4", 8), ("free2", 5), ("figure8", 7)] {
        let p = fixture(name).unwrap();
        let filtered: Vec<Vec<u32>> = low_index_subgroups(&p, n)
            .subgroups
            .into_iter()
            .filter(|s| s.normal)
            .map(|s| s.table.raw().to_vec())
            .collect();
        let direct = low_index_tables(&p, n, LowIndexOptions { normal_only: true, ..Default::default() });
        let mut direct: Vec<Vec<u32>> = direct.tables.iter().map(|t| t.raw().to_vec()).collect();
        direct.sort();
        let mut filtered = filtered;
        filtered.sort();
        assert_eq!(direct, filtered, "{name} up to index {n}");
    }
}

#[test]
fn delta4_has_an_index_four_subgroup_with_gamma4_invariants() {
    let p = delta(4);
    let listing = low_index_subgroups(&p, 4);
    let hits: Vec<_> = listing.subgroups.iter().filter(|s| s.index == 4 && s.invariants == ints(&[3, 15])).collect();
    assert!(!hits.is_empty());
    // The kernel of the map onto Z/4 sending both generators to 1 is one of them.
    let kernel = CosetTable::from_permutations(&p, &[vec![1, 2, 3, 0], vec![1, 2, 3, 0]]).unwrap();
    assert!(is_normal(&kernel));
    assert!(hits.iter().any(|s| s.table.raw() == kernel.raw()));
    let sub = reidemeister_schreier(&p, &kernel).unwrap();
    assert_eq!(sub.abelianization(), ints(&[3, 15]));
}

#[test]
fn gamma4_power_quotients() {
    let g4 = fixture("gamma4").unwrap();
    let a = GroupWord::generator("a");
    let sq = g4.with_relators("gamma4-a2", [a.pow(2)]);
    let cube = g4.with_relators("gamma4-a3", [a.pow(3)]);
    assert_eq!(group_order(&sq, 100_000), Some(3));
    assert_eq!(group_order(&cube, 100_000), Some(81));
}

#[test]
fn strategies_agree_on_subgroup_indices() {
    let p = fixture("gamma-empty").unwrap();
    let cases: [&[&str]; 3] = [&["x", "y"], &["x y", "z"], &["x", "y z y"]];
    for gens in cases {
        let words: Vec<GroupWord> = gens.iter().map(|w| GroupWord::parse(w).unwrap()).collect();
        let h = coset_enumerate(&p, &words, 100_000, Strategy::Hlt);
        let f = coset_enumerate(&p, &words, 100_000, Strategy::Felsch);
        assert_eq!(h.is_complete(), f.is_complete(), "{gens:?}");
        if h.is_complete() {
            assert_eq!(h.index(), f.index(), "{gens:?}");
            assert_eq!(h.failing_relator(&p), None);
        }
    }
}

#[test]
fn luck_sequence_of_free_group() {
    let f = free(2);
    let chain = cyclic_cover_chain(&f, &[2, 4, 8, 16]).unwrap();
    let values = luck_sequence(&f, &chain).unwrap();
    let expected: Vec<BigRational> = [2, 4, 8, 16].iter().map(|&d| ratio(1, 1) + ratio(1, d)).collect();
    assert_eq!(values, expected);
}

#[test]
fn luck_sequence_of_gamma4_vanishes() {
    let g4 = fixture("gamma4").unwrap();
    let chain = cyclic_cover_chain(&g4, &[3, 15]).unwrap();
    assert_eq!(chain.iter().map(|t| t.index()).collect::<Vec<_>>(), [3, 15]);
    assert_eq!(luck_sequence(&g4, &chain).unwrap(), vec![ratio(0, 1); 2]);
}

#[test]
fn luck_sequence_of_figure_eight_vanishes() {
    let k = fixture("figure8").unwrap();
    let chain = cyclic_cover_chain(&k, &[2, 4, 8]).unwrap();
    // Fibred knot: the infinite cyclic cover has finitely generated homology,
    // so b1 of the cyclic covers stays bounded.
    for v in luck_sequence(&k, &chain).unwrap() {
        assert!(v <= ratio(1, 1));
    }
}

#[test]
fn fingerprint_distinguishers() {
    let c = compare(&delta(4), &fixture("gamma4").unwrap(), 3).unwrap();
    match &c.verdict {
        Verdict::Distinguished { side, distinguisher } => {
            assert_eq!(*side, Side::Subgroup);
            assert_eq!(distinguisher.describe(), "Z/3");
        }
        v => panic!("{v:?}"),
    }

    let f = free(2);
    let t = CosetTable::from_permutations(&f, &[vec![1, 0], vec![0, 1]]).unwrap();
    let h = reidemeister_schreier(&f, &t).unwrap();
    assert_eq!(h.rank(), 3);
    let c = compare(&f, &h, 8).unwrap();
    match &c.verdict {
        Verdict::Distinguished { side, distinguisher } => {
            assert_eq!(*side, Side::Subgroup);
            assert_eq!(distinguisher.describe(), "Z/2 x Z/2 x Z/2");
        }
        v => panic!("{v:?}"),
    }
}

#[test]
fn self_comparison_is_equal() {
    for (name, n) in [("free2", 12), ("gamma4", 24), ("delta4", 24), ("gamma-empty", 64), ("figure8", 16), ("fib8", 16)] {
        let p = fixture(name).unwrap();
        assert!(compare(&p, &p, n).unwrap().is_equal(), "{name}");
    }
    // A presentation and its relabelled copy.
    assert!(compare(&fibonacci(8), &fixture("gamma4").unwrap(), 24).unwrap().is_equal());
}

#[test]
fn comparison_refuses_partial_fingerprints() {
    use rigidity_groups::fingerprint::{compare_with, FingerprintError, FingerprintOptions};
    let opts = FingerprintOptions { node_limit: 10, ..Default::default() };
    let f = free(2);
    let e = compare_with(&f, &f, 12, opts).unwrap_err();
    assert!(matches!(e, FingerprintError::Partial { .. }), "{e}");
}

#[test]
fn fingerprint_contents() {
    let f = quotients_up_to(&free(2), 8).unwrap();
    assert!(f.complete);
    let orders: Vec<u64> = f.classes.iter().map(|c| c.invariants.order).collect();
    // Every 2-generated group of order at most 8: all but Z/2^3.
    assert_eq!(orders, [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8]);
    let g4 = quotients_up_to(&fixture("gamma4").unwrap(), 5).unwrap();
    let names: Vec<String> = g4.classes.iter().map(|c| c.describe()).collect();
    assert_eq!(names, ["1", "Z/3", "Z/5"]);
}

#[test]
fn listing_serializes() {
    let p = fixture("delta4").unwrap();
    let listing = low_index_subgroups(&p, 4);
    let v = serde_json::to_value(&listing).unwrap();
    let first = &v["subgroups"][0];
    for key in ["index", "invariants", "normal", "core_index", "generators"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}
