//! The benchmarked inputs are the cases they are labelled as.

use perfpoly_core::search::{registered_families, SearchOptions};
use perfpoly_core::{is_perfect, search_perfect, verify_rank_claims, FieldSpec, SplitSpec};

#[test]
fn benchmark_inputs() {
    let f9 = FieldSpec::new(3).unwrap();
    let a1 = registered_families(&f9).remove(0).spec.to_split_poly();
    assert!(is_perfect(&f9, &a1, 10_000).unwrap());
    let big = SplitSpec::uniform(f9, 8, 2).unwrap().to_split_poly();
    assert_eq!(big.degree(), 639u32.into());
    assert!(is_perfect(&f9, &big, 10_000).unwrap());
    for (p, order) in [(3, 4), (5, 3), (7, 16)] {
        assert!(verify_rank_claims(&FieldSpec::new(p).unwrap(), order).unwrap().passed());
    }
    let f4 = FieldSpec::new(2).unwrap();
    let out = search_perfect(&f4, &SearchOptions { n_max: 2, ..SearchOptions::default() }).unwrap();
    assert_eq!(out.stats.candidates, 6u64.pow(4));
}
