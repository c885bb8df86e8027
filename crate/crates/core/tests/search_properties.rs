use std::collections::BTreeSet;

use perfpoly_core::search::{classify, enumerate_specs, search_perfect, shift_spec, SearchOptions};
use perfpoly_core::{is_perfect, ExtElement, FieldSpec, SplitSpec};
use proptest::prelude::*;

const BOUND: usize = 10_000;

fn options(n_max: u32, uniform_order: Option<u64>) -> SearchOptions {
    SearchOptions { n_max, uniform_order, ..SearchOptions::default() }
}

fn distinct_powers(spec: &SplitSpec) -> BTreeSet<u32> {
    spec.patterns().iter().map(|p| p.power).collect()
}

#[test]
fn pruning_is_conservative() {
    let f4 = FieldSpec::new(2).unwrap();
    for n_max in 0..=2 {
        let pruned = search_perfect(&f4, &options(n_max, None)).unwrap();
        let full = search_perfect(&f4, &SearchOptions { prune: false, ..options(n_max, None) }).unwrap();
        assert_eq!(pruned.specs, full.specs, "n_max={n_max}");
        assert_eq!(full.stats.dense_checks, full.stats.candidates);
    }
    let f9 = FieldSpec::new(3).unwrap();
    let pruned = search_perfect(&f9, &options(0, None)).unwrap();
    let full = search_perfect(&f9, &SearchOptions { prune: false, parallelism: 4, ..options(0, None) }).unwrap();
    assert_eq!(pruned.specs, full.specs);
}

#[test]
fn f4_results_contain_known_polynomials() {
    let f4 = FieldSpec::new(2).unwrap();
    let out = search_perfect(&f4, &options(0, None)).unwrap();
    assert!(out.specs.contains(&SplitSpec::uniform(f4, 3, 0).unwrap()));
    let report = classify(&out.specs, BOUND).unwrap();
    assert_eq!(report.count("other"), 0);
    assert_eq!(report.count("not-perfect"), 0);
}

#[test]
fn f9_table_is_reproduced() {
    let f9 = FieldSpec::new(3).unwrap();
    let out = search_perfect(&f9, &options(0, None)).unwrap();
    assert_eq!(out.stats.candidates, 262_144);
    let report = classify(&out.specs, BOUND).unwrap();
    assert_eq!(report.count("other"), 0);
    // (x^9 − x)^{N−1} for N ∈ {2, 4, 8}; N = 1 is the empty product.
    assert_eq!(report.count("uniform-power"), 3);
    assert!(report.family_shifts.values().all(|&n| n > 0));
}

#[test]
fn uniform_order_away_from_prime_field_forces_constant_n() {
    for p in [2u64, 3] {
        let field = FieldSpec::new(p).unwrap();
        for order in field.orders().into_iter().filter(|n| (p - 1) % n != 0) {
            let out = search_perfect(&field, &options(2, Some(order))).unwrap();
            assert!(!out.specs.is_empty());
            for spec in &out.specs {
                assert_eq!(distinct_powers(spec).len(), 1, "p={p} N={order}: {}", spec.display());
            }
        }
    }
}

#[test]
fn uniform_order_in_prime_field_allows_coset_varying_n() {
    let f9 = FieldSpec::new(3).unwrap();
    let out = search_perfect(&f9, &options(1, Some(2))).unwrap();
    let p = 3;
    let mut witness = false;
    for spec in &out.specs {
        for coset in spec.patterns().chunks(p) {
            assert!(coset.iter().all(|c| c.power == coset[0].power), "{}", spec.display());
        }
        witness |= distinct_powers(spec).len() > 1;
    }
    assert!(witness);
}

#[test]
fn parallel_and_serial_agree() {
    let f9 = FieldSpec::new(3).unwrap();
    let serial = search_perfect(&f9, &options(0, None)).unwrap();
    for threads in [2, 3, 8] {
        let par = search_perfect(&f9, &SearchOptions { parallelism: threads, ..options(0, None) }).unwrap();
        assert_eq!(serial, par, "parallelism={threads}");
    }
}

#[test]
fn every_enumerated_spec_round_trips_through_json() {
    let f4 = FieldSpec::new(2).unwrap();
    for spec in enumerate_specs(&f4, 1, None, u64::MAX).unwrap() {
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(SplitSpec::from_json(f4, &text).unwrap(), spec);
    }
}

fn f9_spec() -> impl Strategy<Value = SplitSpec> {
    let f9 = FieldSpec::new(3).unwrap();
    let e = enumerate_specs(&f9, 1, None, u64::MAX).unwrap();
    (0..e.total()).prop_map(move |i| e.spec_at(i))
}

fn f9_element() -> impl Strategy<Value = ExtElement> {
    (0u32..3, 0u32..3).prop_map(|(i, j)| ExtElement::new(i, j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn perfection_is_shift_invariant(spec in f9_spec(), a in f9_element()) {
        let field = *spec.field();
        let shifted = shift_spec(&spec, a);
        prop_assert_eq!(
            is_perfect(&field, &spec.to_split_poly(), BOUND).unwrap(),
            is_perfect(&field, &shifted.to_split_poly(), BOUND).unwrap()
        );
        prop_assert_eq!(shift_spec(&shifted, field.neg(a)), spec);
    }
}
