use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{rank_and_kernel, rank_over_field, Rational, RationalMatrix};
use super::spectral::build_delta_tilde;
use super::system::{build_system, coefficient_sum, ExponentSystem};
use crate::error::Result;
use crate::field::FieldSpec;

/// Which half of the rank dichotomy applies to `(p, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `N | p − 1`: `S = diag(S_0, …, S_0)`.
    BlockDiagonal,
    /// `N ∤ p − 1`: `rank S = q − 1`.
    FullRank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub tag: &'static str,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

impl ClaimCheck {
    fn new(tag: &'static str, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let passed = expected == observed;
        ClaimCheck { tag, expected, observed, passed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub p: u32,
    #[serde(rename = "N")]
    pub order: u64,
    pub branch: Branch,
    pub rank_s: usize,
    pub rank_delta_tilde: usize,
    pub delta_tilde_block_ranks: Vec<usize>,
    #[serde(serialize_with = "serialize_vectors")]
    pub kernel: Vec<Vec<Rational>>,
    pub checks: Vec<ClaimCheck>,
}

fn serialize_vectors<S: serde::Serializer>(
    vectors: &[Vec<Rational>],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = vectors.iter().map(|v| v.iter().map(Rational::to_string).collect()).collect();
    strings.serialize(serializer)
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Indicator vectors of the cosets `iα + F_p`, `i = 0, …, p − 1`.
pub(crate) fn coset_indicators(p: usize) -> Vec<Vec<Rational>> {
    (0..p).map(|i| (0..p * p).map(|k| if k / p == i { Rational::one() } else { Rational::zero() }).collect()).collect()
}

/// `span(kernel) = span(expected)`, given that `kernel` is a basis of the
/// nullspace of `m`.
fn kernel_is_spanned_by(m: &RationalMatrix, kernel: &[Vec<Rational>], expected: &[Vec<Rational>]) -> bool {
    kernel.len() == expected.len()
        && expected.iter().all(|v| m.apply(v).iter().all(Zero::is_zero))
        && rank_over_field(&RationalMatrix::from_rows(expected.to_vec())) == expected.len()
}

/// Computes every rank statement about `S`, `S_0` and `Δ̃` for `(p, N)` and
/// records each one as a tagged check.
pub fn verify_rank_claims(field: &FieldSpec, order: u64) -> Result<RankReport> {
    let sys = build_system(field, order)?;
    Ok(verify_system(&sys))
}

pub(crate) fn verify_system(sys: &ExponentSystem) -> RankReport {
    let p = sys.p();
    let q = sys.q();
    let divides = (p as u64 - 1).is_multiple_of(sys.order);
    let branch = if divides { Branch::BlockDiagonal } else { Branch::FullRank };

    let s = sys.to_rational();
    let (rank_s, kernel) = rank_and_kernel(&s);
    let dt = build_delta_tilde(sys);
    let rank_delta_tilde = rank_over_field(&dt.assembled());
    let block_ranks: Vec<usize> = dt.blocks.iter().map(rank_over_field).collect();

    let mut checks = vec![
        ClaimCheck::new("block-circulant", true, sys.is_block_circulant()),
        ClaimCheck::new("coefficient-sum", 0, coefficient_sum(sys)),
        ClaimCheck::new("off-diagonal-blocks-vanish", divides, sys.off_diagonal_blocks_vanish()),
        ClaimCheck::new("regrouping", true, dt.regrouped() == dt.assembled()),
        ClaimCheck::new("similarity-rank", rank_s, rank_delta_tilde),
        ClaimCheck::new("block-rank-sum", rank_delta_tilde, block_ranks.iter().sum::<usize>()),
    ];

    if divides {
        let (rank_s0, _) = rank_and_kernel(&sys.s0_rational());
        checks.push(ClaimCheck::new("block-diagonal", true, sys.is_block_diagonal()));
        checks.push(ClaimCheck::new("rank-s0", p - 1, rank_s0));
        checks.push(ClaimCheck::new("rank-s", p * (p - 1), rank_s));
        checks.push(ClaimCheck::new(
            "kernel-coset-indicators",
            true,
            kernel_is_spanned_by(&s, &kernel, &coset_indicators(p)),
        ));
    } else {
        checks.push(ClaimCheck::new("rank-delta-tilde-0", p - 1, block_ranks[0]));
        let all_full = block_ranks[1..].iter().all(|&r| r == p);
        checks.push(ClaimCheck::new("rank-delta-tilde-j", true, all_full));
        checks.push(ClaimCheck::new("rank-s", q - 1, rank_s));
        let ones = vec![vec![Rational::one(); q]];
        checks.push(ClaimCheck::new("kernel-all-ones", true, kernel_is_spanned_by(&s, &kernel, &ones)));
    }

    RankReport {
        p: sys.field.p,
        order: sys.order,
        branch,
        rank_s,
        rank_delta_tilde,
        delta_tilde_block_ranks: block_ranks,
        kernel,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_reports() {
        let f3 = FieldSpec::new(3).unwrap();
        let r = verify_rank_claims(&f3, 2).unwrap();
        assert_eq!(r.branch, Branch::BlockDiagonal);
        assert_eq!(r.rank_s, 6);
        assert_eq!(r.kernel, coset_indicators(3));
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());

        let f2 = FieldSpec::new(2).unwrap();
        let r = verify_rank_claims(&f2, 3).unwrap();
        assert_eq!(r.branch, Branch::FullRank);
        assert_eq!(r.rank_s, 3);
        assert_eq!(r.kernel, vec![vec![Rational::one(); 4]]);
        assert!(r.passed());

        let r = verify_rank_claims(&f3, 4).unwrap();
        assert_eq!(r.rank_s, 8);
        assert_eq!(r.kernel, vec![vec![Rational::one(); 9]]);
        assert_eq!(r.delta_tilde_block_ranks, vec![2, 3, 3]);
        assert!(r.passed());
    }

    #[test]
    fn explicit_nine_by_nine_oracle() {
        // diag(circ(1, −2, 1)) three times, written out by hand.
        let s0 = [[1, -2, 1], [1, 1, -2], [-2, 1, 1]];
        let full: Vec<Vec<i64>> =
            (0..9).map(|r| (0..9).map(|c| if r / 3 == c / 3 { s0[r % 3][c % 3] } else { 0 }).collect()).collect();
        let f3 = FieldSpec::new(3).unwrap();
        let sys = build_system(&f3, 2).unwrap();
        assert_eq!(sys.matrix, full);
        let (rank, kernel) = rank_and_kernel(&RationalMatrix::from_integers(&full));
        assert_eq!(rank, 6);
        assert_eq!(kernel, coset_indicators(3));
    }

    #[test]
    fn failure_is_tagged() {
        let f3 = FieldSpec::new(3).unwrap();
        let mut sys = build_system(&f3, 4).unwrap();
        // Break row sums: the all-ones vector leaves the kernel.
        sys.matrix[0][0] = 2;
        let r = verify_system(&sys);
        assert!(!r.passed());
        let tags: Vec<_> = r.failures().map(|c| c.tag).collect();
        assert!(tags.contains(&"block-circulant"));
    }
}
