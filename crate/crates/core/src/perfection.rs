//! Root patterns `γ ↦ (N(γ), n(γ))` and the perfection criteria for the
//! splitting polynomial `A = ∏ (x − γ)^{N(γ)·p^{n(γ)} − 1}`.

use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldSpec};
use crate::polynomial::{factor_text, is_perfect, sigma_closed_form, SplitPoly};

/// The pair `(N, n)` attached to one root: exponent `N·p^n − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentPattern {
    /// `N`, a divisor of `q − 1`.
    pub order: u64,
    /// `n`, the power of `p`.
    pub power: u32,
}

impl ExponentPattern {
    /// `(1, 0)`: exponent zero, the root does not occur.
    pub const ABSENT: ExponentPattern = ExponentPattern { order: 1, power: 0 };

    pub const fn new(order: u64, power: u32) -> Self {
        ExponentPattern { order, power }
    }

    pub fn is_absent(self) -> bool {
        self == Self::ABSENT
    }

    pub fn exponent(self, p: u32) -> BigUint {
        BigUint::from(self.order) * BigUint::from(p).pow(self.power) - 1u32
    }
}

/// One serialized root: `{gamma, N, n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEntry {
    pub gamma: ExtElement,
    #[serde(rename = "N")]
    pub order: u64,
    #[serde(rename = "n")]
    pub power: u32,
}

/// Total map `F_q → (N, n)`, stored in lexicographic element order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitSpec {
    field: FieldSpec,
    patterns: Vec<ExponentPattern>,
}

impl PartialOrd for SplitSpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the pattern vector; specs over different fields are
/// ordered by characteristic first.
impl Ord for SplitSpec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.p.cmp(&other.field.p).then_with(|| self.patterns.cmp(&other.patterns))
    }
}

impl SplitSpec {
    /// `A = 1`: every root absent.
    pub fn new(field: FieldSpec) -> Self {
        SplitSpec { field, patterns: vec![ExponentPattern::ABSENT; field.size()] }
    }

    /// `(x^q − x)^{N·p^n − 1}`.
    pub fn uniform(field: FieldSpec, order: u64, power: u32) -> Result<Self> {
        field.check_order(order)?;
        Ok(SplitSpec { field, patterns: vec![ExponentPattern::new(order, power); field.size()] })
    }

    /// Patterns indexed in lexicographic element order.
    pub fn from_patterns(field: FieldSpec, patterns: Vec<ExponentPattern>) -> Result<Self> {
        if patterns.len() != field.size() {
            return Err(Error::Invalid(format!("expected {} patterns, got {}", field.size(), patterns.len())));
        }
        for pat in &patterns {
            field.check_order(pat.order)?;
        }
        Ok(SplitSpec { field, patterns })
    }

    /// Builds from serialized entries; unlisted roots are absent.
    pub fn from_entries(field: FieldSpec, entries: &[SpecEntry]) -> Result<Self> {
        let mut spec = SplitSpec::new(field);
        let mut seen = vec![false; field.size()];
        for entry in entries {
            let gamma = field.check(entry.gamma)?;
            let k = field.index_of(gamma);
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::Invalid(format!("duplicate root {:?}", [gamma.i, gamma.j])));
            }
            spec.set(gamma, ExponentPattern::new(entry.order, entry.power))?;
        }
        Ok(spec)
    }

    pub fn from_json(field: FieldSpec, json: &str) -> Result<Self> {
        let entries: Vec<SpecEntry> =
            serde_json::from_str(json).map_err(|e| Error::Invalid(format!("spec JSON: {e}")))?;
        SplitSpec::from_entries(field, &entries)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn patterns(&self) -> &[ExponentPattern] {
        &self.patterns
    }

    pub fn get(&self, gamma: ExtElement) -> ExponentPattern {
        self.patterns[self.field.index_of(gamma)]
    }

    pub fn set(&mut self, gamma: ExtElement, pattern: ExponentPattern) -> Result<()> {
        self.field.check(gamma)?;
        self.field.check_order(pattern.order)?;
        let k = self.field.index_of(gamma);
        self.patterns[k] = pattern;
        Ok(())
    }

    /// Builder form of [`SplitSpec::set`].
    pub fn with(mut self, gamma: ExtElement, pattern: ExponentPattern) -> Result<Self> {
        self.set(gamma, pattern)?;
        Ok(self)
    }

    pub fn exponent(&self, gamma: ExtElement) -> BigUint {
        self.get(gamma).exponent(self.field.p)
    }

    pub fn is_present(&self, gamma: ExtElement) -> bool {
        !self.get(gamma).is_absent()
    }

    /// `ω(A)`, the number of distinct roots.
    pub fn omega(&self) -> usize {
        self.patterns.iter().filter(|p| !p.is_absent()).count()
    }

    /// Present roots with their patterns, in lexicographic order.
    pub fn present(&self) -> impl Iterator<Item = (ExtElement, ExponentPattern)> + '_ {
        self.patterns.iter().enumerate().filter(|(_, p)| !p.is_absent()).map(|(k, &p)| (self.field.element_at(k), p))
    }

    pub fn entries(&self) -> Vec<SpecEntry> {
        self.present().map(|(gamma, p)| SpecEntry { gamma, order: p.order, power: p.power }).collect()
    }

    /// `Some(N)` when every root, present or not, carries the same `N`.
    pub fn uniform_order(&self) -> Option<u64> {
        let first = self.patterns[0].order;
        self.patterns.iter().all(|p| p.order == first).then_some(first)
    }

    pub fn to_split_poly(&self) -> SplitPoly {
        SplitPoly::from_pairs(self.present().map(|(g, p)| (g, p.exponent(self.field.p))))
    }

    /// Factored `σ(A)`, assembled from the per-root closed forms.
    pub fn factored_sigma(&self) -> SplitPoly {
        self.present().fold(SplitPoly::one(), |acc, (g, p)| {
            let part = sigma_closed_form(&self.field, g, p.order, p.power).expect("orders are validated");
            acc.mul(&part)
        })
    }

    /// The pattern of `A(x − a)`: every root moves from `γ` to `γ + a`.
    pub fn shifted(&self, a: ExtElement) -> SplitSpec {
        let mut patterns = vec![ExponentPattern::ABSENT; self.patterns.len()];
        for (k, &pat) in self.patterns.iter().enumerate() {
            let moved = self.field.add(self.field.element_at(k), a);
            patterns[self.field.index_of(moved)] = pat;
        }
        SplitSpec { field: self.field, patterns }
    }

    /// Restriction to the roots `iα + j`, `j ∈ F_p`, for a fixed `i`.
    pub fn restrict_to_coset(&self, i: u32) -> SplitSpec {
        let mut out = SplitSpec::new(self.field);
        let p = self.field.p as usize;
        let start = i as usize * p;
        out.patterns[start..start + p].copy_from_slice(&self.patterns[start..start + p]);
        out
    }

    /// Human-readable product form.
    pub fn display(&self) -> String {
        if self.omega() == 0 {
            return "1".to_string();
        }
        self.present()
            .map(|(g, pat)| factor_text(&self.field, g, &pat.exponent(self.field.p)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Serialize for SplitSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.entries();
        let mut seq = serializer.serialize_seq(Some(entries.len()))?;
        for entry in &entries {
            seq.serialize_element(entry)?;
        }
        seq.end()
    }
}

/// `Λ^γ = {δ ≠ γ : (γ + 1 − δ)^N = 1}`, lexicographically sorted.
pub fn lambda_set(field: &FieldSpec, gamma: ExtElement, order: u64) -> Result<Vec<ExtElement>> {
    field.check_order(order)?;
    let shifted = field.add(gamma, ExtElement::ONE);
    Ok(field
        .elements()
        .filter(|&delta| delta != gamma && field.pow(field.sub(shifted, delta), order) == ExtElement::ONE)
        .collect())
}

/// Checks `N·p^{n(γ+1)} = p^{n(γ)} + Σ_{δ ∈ Λ^γ} p^{n(δ)}` for every `γ`.
pub fn check_exponent_criterion(spec: &SplitSpec) -> Result<bool> {
    let order = spec.uniform_order().ok_or(Error::NonUniformOrder)?;
    let field = spec.field;
    let p = BigUint::from(field.p);
    let unknown = |gamma: ExtElement| p.pow(spec.get(gamma).power);
    for gamma in field.elements() {
        let lhs = BigUint::from(order) * unknown(field.add(gamma, ExtElement::ONE));
        let rhs = lambda_set(&field, gamma, order)?.into_iter().fold(unknown(gamma), |acc, delta| acc + unknown(delta));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the exponent criterion and the coefficient-level check agree.
pub fn criterion_agrees_with_sigma(spec: &SplitSpec, degree_bound: usize) -> Result<bool> {
    let by_criterion = check_exponent_criterion(spec)?;
    let by_sigma = is_perfect(&spec.field, &spec.to_split_poly(), degree_bound)?;
    Ok(by_criterion == by_sigma)
}

/// Roots `a + j`, `j ∈ F_p`, of one additive coset of the prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetFactor {
    /// `a = iα`, so the representative of the prime field's coset is 0.
    pub representative: ExtElement,
    /// `(N, n)` at `a + j` for `j = 0, …, p − 1`.
    #[serde(serialize_with = "serialize_patterns")]
    pub patterns: Vec<ExponentPattern>,
    /// All `p` roots of the coset are present.
    pub complete: bool,
}

fn serialize_patterns<S: serde::Serializer>(
    patterns: &[ExponentPattern],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<(u64, u32)> = patterns.iter().map(|p| (p.order, p.power)).collect();
    pairs.serialize(serializer)
}

impl CosetFactor {
    /// Constant `(N_i, n_i)` along the coset, if any.
    pub fn constant_pattern(&self) -> Option<ExponentPattern> {
        let first = self.patterns[0];
        self.patterns.iter().all(|&p| p == first).then_some(first)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetDecomposition {
    /// One factor per coset holding at least one root, by representative.
    pub factors: Vec<CosetFactor>,
    /// Some coset is only partly present.
    pub partial: bool,
}

impl CosetDecomposition {
    /// `r` in `A = A_0 ⋯ A_r`; `None` for `A = 1`.
    pub fn r(&self) -> Option<usize> {
        self.factors.len().checked_sub(1)
    }
}

/// Groups the present roots by the cosets `iα + F_p`.
pub fn coset_decompose(spec: &SplitSpec) -> CosetDecomposition {
    let p = spec.field.p as usize;
    let mut factors = Vec::new();
    let mut partial = false;
    for (i, chunk) in spec.patterns.chunks(p).enumerate() {
        let present = chunk.iter().filter(|pat| !pat.is_absent()).count();
        if present == 0 {
            continue;
        }
        let complete = present == p;
        partial |= !complete;
        factors.push(CosetFactor { representative: ExtElement::new(i as u32, 0), patterns: chunk.to_vec(), complete });
    }
    CosetDecomposition { factors, partial }
}

/// Every coset factor is perfect on its own.
pub fn is_trivially_perfect(spec: &SplitSpec, degree_bound: usize) -> Result<bool> {
    for factor in coset_decompose(spec).factors {
        let part = spec.restrict_to_coset(factor.representative.i);
        if !is_perfect(&spec.field, &part.to_split_poly(), degree_bound)? {
            return Ok(false);
        }
    }
    Ok(true)
}
