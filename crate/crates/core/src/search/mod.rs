//! Exhaustive search for perfect root patterns over a small `F_{p^2}`.
//!
//! Candidates are all maps `γ ↦ (N(γ), n(γ))` with `N(γ) | q − 1` and
//! `n(γ) ≤ n_max`, indexed in mixed radix with the lexicographically first
//! root as the most significant digit. Work units are contiguous index
//! ranges (a fixed prefix of root assignments); per-unit results are merged
//! and sorted, so output does not depend on the thread count.

mod classify;
mod report;

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use classify::{
    classify, classify_spec, match_family, registered_families, shift_spec, Classification, ClassificationReport,
    ClassifiedSpec, Family,
};
pub use report::{SearchParams, SearchReport};

use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldSpec};
use crate::perfection::{ExponentPattern, SplitSpec};
use crate::polynomial::{is_perfect, DEFAULT_DEGREE_BOUND};

/// Default ceiling on the number of enumerated candidates (`8^9` fits).
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 1 << 27;

/// Resource bounds shared by the search and the polynomial code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    pub degree_bound: usize,
    pub candidate_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { degree_bound: DEFAULT_DEGREE_BOUND, candidate_budget: DEFAULT_CANDIDATE_BUDGET }
    }
}

/// Indexed stream of candidate specs in lexicographic order.
#[derive(Clone, Debug)]
pub struct SpecEnumerator {
    field: FieldSpec,
    choices: Vec<ExponentPattern>,
    total: u64,
    next: u64,
}

/// All patterns with `N(γ) | q − 1` (or `N(γ) = uniform_order`) and
/// `n(γ) ≤ n_max`.
pub fn enumerate_specs(
    field: &FieldSpec,
    n_max: u32,
    uniform_order: Option<u64>,
    budget: u64,
) -> Result<SpecEnumerator> {
    let orders = match uniform_order {
        Some(order) => {
            field.check_order(order)?;
            vec![order]
        }
        None => field.orders(),
    };
    let choices: Vec<ExponentPattern> =
        orders.iter().flat_map(|&order| (0..=n_max).map(move |power| ExponentPattern::new(order, power))).collect();
    let total = BigUint::from(choices.len()).pow(field.size() as u32);
    match total.to_u64() {
        Some(t) if t <= budget => Ok(SpecEnumerator { field: *field, choices, total: t, next: 0 }),
        _ => Err(Error::BudgetExceeded { candidates: total, budget }),
    }
}

impl SpecEnumerator {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn choices(&self) -> &[ExponentPattern] {
        &self.choices
    }

    fn digits_into(&self, mut index: u64, out: &mut [usize]) {
        let base = self.choices.len() as u64;
        for slot in out.iter_mut().rev() {
            *slot = (index % base) as usize;
            index /= base;
        }
    }

    pub fn spec_at(&self, index: u64) -> SplitSpec {
        let mut digits = vec![0; self.field.size()];
        self.digits_into(index, &mut digits);
        let patterns = digits.iter().map(|&d| self.choices[d]).collect();
        SplitSpec::from_patterns(self.field, patterns).expect("choices hold valid orders")
    }
}

impl Iterator for SpecEnumerator {
    type Item = SplitSpec;

    fn next(&mut self) -> Option<SplitSpec> {
        (self.next < self.total).then(|| {
            self.next += 1;
            self.spec_at(self.next - 1)
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub n_max: u32,
    pub uniform_order: Option<u64>,
    pub parallelism: usize,
    /// Apply the necessary-condition screens before the dense check.
    pub prune: bool,
    pub limits: Limits,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { n_max: 0, uniform_order: None, parallelism: 1, prune: true, limits: Limits::default() }
    }
}

/// How many candidates each stage disposed of.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub candidates: u64,
    /// `p ∤ ω(A)`: the `x^{d−1}` coefficients of `A` and `σ(A)` differ.
    pub rejected_by_coefficients: u64,
    /// Some coset `iα + F_p` is only partly present.
    pub rejected_by_cosets: u64,
    /// Root multiplicities of the factored `σ(A)` differ from those of `A`.
    pub rejected_by_multiplicities: u64,
    /// Candidates that reached the coefficient-wise `σ(A) = A` comparison.
    pub dense_checks: u64,
    pub perfect: u64,
}

impl SearchStats {
    fn merge(mut self, other: SearchStats) -> SearchStats {
        self.candidates += other.candidates;
        self.rejected_by_coefficients += other.rejected_by_coefficients;
        self.rejected_by_cosets += other.rejected_by_cosets;
        self.rejected_by_multiplicities += other.rejected_by_multiplicities;
        self.dense_checks += other.dense_checks;
        self.perfect += other.perfect;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Perfect specs in lexicographic order.
    pub specs: Vec<SplitSpec>,
    pub stats: SearchStats,
}

/// Precomputed screens for one enumeration.
struct Screens {
    field: FieldSpec,
    /// Exponents `N·p^n − 1` per choice, when they fit in `u128`.
    exponents: Option<Vec<u128>>,
    /// `p^n` per choice.
    frobenius: Vec<u128>,
    /// For each choice and root `δ`, the indices of `δ + ζ` over the
    /// `N`-th roots of unity `ζ ≠ 1`.
    neighbours: Vec<Vec<Vec<usize>>>,
    /// Index of `δ + 1`.
    successor: Vec<usize>,
}

impl Screens {
    fn new(field: &FieldSpec, choices: &[ExponentPattern]) -> Self {
        let q = field.size();
        let p = u128::from(field.p);
        // Every σ multiplicity is at most q·max(N)·p^n_max; require headroom.
        let exponents: Option<Vec<u128>> = choices
            .iter()
            .map(|c| {
                let frob = p.checked_pow(c.power)?;
                let top = frob.checked_mul(u128::from(field.q_minus_one()))?.checked_mul(q as u128)?;
                (top < u128::MAX / 2).then(|| u128::from(c.order) * frob - 1)
            })
            .collect();
        let frobenius = choices.iter().map(|c| p.checked_pow(c.power).unwrap_or(0)).collect();
        let neighbours = choices
            .iter()
            .map(|c| {
                let roots = field.nth_roots_of_unity(c.order).expect("validated order");
                field
                    .elements()
                    .map(|delta| roots[1..].iter().map(|&z| field.index_of(field.add(delta, z))).collect())
                    .collect()
            })
            .collect();
        let successor = field.elements().map(|d| field.index_of(field.add(d, ExtElement::ONE))).collect();
        Screens { field: *field, exponents, frobenius, neighbours, successor }
    }

    /// Compares the `x^{d−1}` coefficients of `A` and `σ(A)`: `−Σ e(γ)·γ`
    /// against `Σ (1 − e(γ)·γ)` over present roots.
    fn coefficients_match(&self, digits: &[usize], choices: &[ExponentPattern]) -> bool {
        let f = &self.field;
        let mut lhs = ExtElement::ZERO;
        let mut rhs = ExtElement::ZERO;
        for (k, &d) in digits.iter().enumerate() {
            let pat = choices[d];
            if pat.is_absent() {
                continue;
            }
            let gamma = f.element_at(k);
            // e mod p = (N mod p)·(p^n mod p) − 1.
            let e_mod = if pat.power == 0 { (pat.order % u64::from(f.p)) as i64 - 1 } else { -1 };
            let term = f.mul(f.from_int(e_mod), gamma);
            lhs = f.sub(lhs, term);
            rhs = f.add(rhs, f.sub(ExtElement::ONE, term));
        }
        lhs == rhs
    }

    fn cosets_complete(&self, digits: &[usize], choices: &[ExponentPattern]) -> bool {
        digits.chunks(self.field.p as usize).all(|coset| {
            let present = coset.iter().filter(|&&d| !choices[d].is_absent()).count();
            present == 0 || present == coset.len()
        })
    }

    /// Multiplicities of `σ(A)` from the closed form of every prime-power
    /// factor, compared with the exponents of `A`. `None` if exponents do
    /// not fit in machine integers.
    fn multiplicities_match(
        &self,
        digits: &[usize],
        choices: &[ExponentPattern],
        scratch: &mut Vec<u128>,
    ) -> Option<bool> {
        let exponents = self.exponents.as_ref()?;
        scratch.clear();
        scratch.resize(digits.len(), 0);
        for (delta, &d) in digits.iter().enumerate() {
            if choices[d].is_absent() {
                continue;
            }
            let frob = self.frobenius[d];
            scratch[self.successor[delta]] += frob - 1;
            for &t in &self.neighbours[d][delta] {
                scratch[t] += frob;
            }
        }
        Some(digits.iter().zip(scratch.iter()).all(|(&d, &m)| exponents[d] == m))
    }
}

fn search_range(
    enumerator: &SpecEnumerator,
    screens: Option<&Screens>,
    range: Range<u64>,
    degree_bound: usize,
) -> Result<(Vec<SplitSpec>, SearchStats)> {
    let field = enumerator.field;
    let choices = &enumerator.choices;
    let mut stats = SearchStats::default();
    let mut found = Vec::new();
    let mut digits = vec![0usize; field.size()];
    let mut scratch = Vec::new();
    for index in range {
        stats.candidates += 1;
        enumerator.digits_into(index, &mut digits);
        if let Some(s) = screens {
            if !s.coefficients_match(&digits, choices) {
                stats.rejected_by_coefficients += 1;
                continue;
            }
            if !s.cosets_complete(&digits, choices) {
                stats.rejected_by_cosets += 1;
                continue;
            }
            if s.multiplicities_match(&digits, choices, &mut scratch) == Some(false) {
                stats.rejected_by_multiplicities += 1;
                continue;
            }
        }
        stats.dense_checks += 1;
        let patterns = digits.iter().map(|&d| choices[d]).collect();
        let spec = SplitSpec::from_patterns(field, patterns)?;
        if is_perfect(&field, &spec.to_split_poly(), degree_bound)? {
            stats.perfect += 1;
            found.push(spec);
        }
    }
    Ok((found, stats))
}

/// Ranges obtained by fixing the first `k` root assignments, with `k` the
/// smallest prefix giving at least 64 units.
fn work_units(total: u64, base: u64, roots: usize) -> Vec<Range<u64>> {
    let mut units = 1u64;
    let mut prefix = 0;
    while units < 64 && prefix < roots {
        units *= base;
        prefix += 1;
    }
    let size = total / units.max(1);
    (0..units).map(|u| u * size..(u + 1) * size).collect()
}

/// Every candidate `A` with `σ(A) = A`, sorted lexicographically.
pub fn search_perfect(field: &FieldSpec, options: &SearchOptions) -> Result<SearchOutcome> {
    let enumerator = enumerate_specs(field, options.n_max, options.uniform_order, options.limits.candidate_budget)?;
    let screens = options.prune.then(|| Screens::new(field, &enumerator.choices));
    let units = work_units(enumerator.total, enumerator.choices.len() as u64, field.size());
    let degree_bound = options.limits.degree_bound;

    let run = |unit: Range<u64>| search_range(&enumerator, screens.as_ref(), unit, degree_bound);
    let parts: Vec<Result<(Vec<SplitSpec>, SearchStats)>> = if options.parallelism <= 1 {
        units.into_iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.parallelism)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| units.into_par_iter().map(run).collect())
    };

    let mut specs = Vec::new();
    let mut stats = SearchStats::default();
    for part in parts {
        let (found, s) = part?;
        specs.extend(found);
        stats = stats.merge(s);
    }
    specs.sort();
    Ok(SearchOutcome { specs, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_counts() {
        let f9 = FieldSpec::new(3).unwrap();
        assert_eq!(enumerate_specs(&f9, 0, None, u64::MAX).unwrap().total(), 4u64.pow(9));
        let f4 = FieldSpec::new(2).unwrap();
        let all: Vec<_> = enumerate_specs(&f4, 0, None, u64::MAX).unwrap().collect();
        assert_eq!(all.len(), 16);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
        assert_eq!(enumerate_specs(&f9, 1, Some(4), u64::MAX).unwrap().total(), 512);
        assert!(matches!(enumerate_specs(&f9, 0, None, 1000), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(enumerate_specs(&f9, 0, Some(3), u64::MAX), Err(Error::NotDivisor { .. })));
    }

    #[test]
    fn first_and_last_candidates() {
        let f4 = FieldSpec::new(2).unwrap();
        let e = enumerate_specs(&f4, 1, None, u64::MAX).unwrap();
        assert_eq!(e.spec_at(0), SplitSpec::new(f4));
        assert_eq!(e.spec_at(e.total() - 1), SplitSpec::uniform(f4, 3, 1).unwrap());
        // The last root is the least significant digit.
        let second = e.spec_at(1);
        assert_eq!(second.get(ExtElement::new(1, 1)), ExponentPattern::new(1, 1));
        assert_eq!(second.omega(), 1);
    }

    #[test]
    fn work_units_cover_range() {
        let units = work_units(4u64.pow(9), 4, 9);
        assert_eq!(units.len(), 64);
        assert_eq!(units[0].start, 0);
        assert_eq!(units.last().unwrap().end, 4u64.pow(9));
        assert!(units.windows(2).all(|w| w[0].end == w[1].start));
        let tiny = work_units(16, 2, 4);
        assert_eq!(tiny.len(), 16);
    }

    #[test]
    fn f4_search_matches_exhaustive_oracle() {
        let f4 = FieldSpec::new(2).unwrap();
        for n_max in 0..=2 {
            let oracle: Vec<SplitSpec> = enumerate_specs(&f4, n_max, None, u64::MAX)
                .unwrap()
                .filter(|s| is_perfect(&f4, &s.to_split_poly(), DEFAULT_DEGREE_BOUND).unwrap())
                .collect();
            for prune in [false, true] {
                let opts = SearchOptions { n_max, prune, ..SearchOptions::default() };
                let got = search_perfect(&f4, &opts).unwrap();
                assert_eq!(got.specs, oracle, "n_max={n_max} prune={prune}");
            }
        }
        let opts = SearchOptions::default();
        let got = search_perfect(&f4, &opts).unwrap();
        assert!(got.specs.contains(&SplitSpec::uniform(f4, 3, 0).unwrap()));
        assert!(got.specs.contains(&SplitSpec::new(f4)));
    }

    #[test]
    fn screens_agree_with_dense_check() {
        let f9 = FieldSpec::new(3).unwrap();
        let e = enumerate_specs(&f9, 0, None, u64::MAX).unwrap();
        let screens = Screens::new(&f9, e.choices());
        let mut digits = vec![0; 9];
        let mut scratch = Vec::new();
        // Every 97th candidate: multiplicity screen ⇔ dense σ comparison.
        for index in (0..e.total()).step_by(97) {
            e.digits_into(index, &mut digits);
            let spec = e.spec_at(index);
            let dense = is_perfect(&f9, &spec.to_split_poly(), DEFAULT_DEGREE_BOUND).unwrap();
            let screened = screens.multiplicities_match(&digits, e.choices(), &mut scratch).unwrap();
            assert_eq!(dense, screened, "index {index}");
            if dense {
                assert!(screens.coefficients_match(&digits, e.choices()));
            }
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let f9 = FieldSpec::new(3).unwrap();
        let serial =
            search_perfect(&f9, &SearchOptions { uniform_order: Some(2), n_max: 1, ..SearchOptions::default() })
                .unwrap();
        let parallel = search_perfect(
            &f9,
            &SearchOptions { uniform_order: Some(2), n_max: 1, parallelism: 4, ..SearchOptions::default() },
        )
        .unwrap();
        assert_eq!(serial, parallel);
    }
}
