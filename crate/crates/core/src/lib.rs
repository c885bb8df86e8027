//! Splitting perfect polynomials over the quadratic extension `F_{p^2}`.
//!
//! A monic polynomial `A` is perfect when the sum of its monic divisors,
//! `σ(A)`, equals `A`. For polynomials that split into linear factors over
//! `F_{p^2}` this crate provides:
//!
//! - exact arithmetic in `F_p[α]` ([`field`]),
//! - dense and factored polynomials together with `σ` and a brute-force
//!   divisor-sum oracle ([`polynomial`]),
//! - the exponent criteria for perfection and the coset decomposition of a
//!   root pattern ([`perfection`]),
//! - the block-circulant exponent system, its spectral regrouping over
//!   `Q(ω)` and exact rank/kernel verification ([`circulant`]),
//! - exhaustive search and classification of perfect root patterns
//!   ([`search`]).
//!
//! ```
//! use perfpoly_core::{is_perfect, search_perfect, verify_rank_claims, FieldSpec, SearchOptions, SplitSpec};
//!
//! let f9 = FieldSpec::new(3)?;
//! let a = SplitSpec::uniform(f9, 4, 0)?; // (x^9 − x)^3
//! assert!(is_perfect(&f9, &a.to_split_poly(), 10_000)?);
//!
//! let report = verify_rank_claims(&FieldSpec::new(5)?, 3)?;
//! assert_eq!(report.rank_s, 24);
//! assert!(report.passed());
//!
//! let found = search_perfect(&f9, &SearchOptions { parallelism: 4, ..Default::default() })?;
//! assert_eq!(found.specs.len(), 16);
//! # Ok::<(), perfpoly_core::Error>(())
//! ```

pub mod circulant;
pub mod error;
pub mod field;
pub mod perfection;
pub mod polynomial;
pub mod search;

pub use circulant::{
    build_delta_tilde, build_system, circulant_eigenvalues, cyclotomic_constant_test, rank_and_kernel,
    verify_rank_claims, CyclotomicNumber, DeltaTilde, ExponentSystem, Matrix, RankReport, Rational, RationalMatrix,
};
pub use error::{Error, Result};
pub use field::{lex_compare, ExtElement, ExtOp, FieldSpec};
pub use perfection::{
    check_exponent_criterion, coset_decompose, criterion_agrees_with_sigma, is_trivially_perfect, lambda_set,
    CosetDecomposition, CosetFactor, ExponentPattern, SplitSpec,
};
pub use polynomial::{
    expand, is_perfect, sigma_bruteforce, sigma_closed_form, sigma_prime_power, sigma_split, DensePoly, SplitPoly,
};
pub use search::{
    classify, enumerate_specs, search_perfect, shift_spec, Classification, ClassificationReport, Family, Limits,
    SearchOptions, SearchOutcome, SearchReport,
};
