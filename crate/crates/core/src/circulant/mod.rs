//! The block-circulant exponent system and its exact linear algebra.
//!
//! For a uniform order `N`, writing `x_γ = p^{n(γ)}` turns the perfection
//! criterion into the homogeneous system `S·x = 0` with one equation and one
//! unknown per element of `F_q`, both in lexicographic order. `S` is
//! block circulant with circulant `p × p` blocks, so conjugating each block
//! by the Fourier matrix over `Q(ω)` and regrouping rows and columns yields
//! the block-diagonal matrix `Δ̃` of the same rank.

mod claims;
mod cyclotomic;
mod linalg;
mod spectral;
mod system;

pub use claims::{verify_rank_claims, Branch, ClaimCheck, RankReport};
pub use cyclotomic::CyclotomicNumber;
pub use linalg::{rank_and_kernel, rank_over_field, FieldScalar, Matrix, Rational, RationalMatrix};
pub use spectral::{build_delta_tilde, circulant_eigenvalues, cyclotomic_constant_test, DeltaTilde};
pub use system::{build_system, coefficient_sum, ExponentSystem};
