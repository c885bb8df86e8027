use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::field::{ExtElement, FieldSpec};
use crate::perfection::{is_trivially_perfect, ExponentPattern, SplitSpec};
use crate::polynomial::is_perfect;

/// A named root pattern whose translates are recognized by [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub spec: SplitSpec,
}

/// The two non-trivial families over `F_9 = F_3[α]`, `α² = −1`, with
/// `n(γ) = 0`. `N` depends only on the constant coordinate `j` of `γ`:
/// `A1` has `N = 4` at `j = 0` and `N = 2` at `j ∈ {1, 2}`; `A2` has `N = 2`
/// at `j = 1` and `N = 4` at `j ∈ {0, 2}`.
pub fn registered_families(field: &FieldSpec) -> Vec<Family> {
    if *field != FieldSpec::new(3).expect("3 is prime") {
        return Vec::new();
    }
    let by_constant = |orders: [u64; 3]| {
        let patterns = field.elements().map(|g| ExponentPattern::new(orders[g.j as usize], 0)).collect();
        SplitSpec::from_patterns(*field, patterns).expect("orders divide 8")
    };
    vec![
        Family { name: "A1".into(), spec: by_constant([4, 2, 2]) },
        Family { name: "A2".into(), spec: by_constant([4, 2, 4]) },
    ]
}

/// The pattern of `A(x − a)`.
pub fn shift_spec(spec: &SplitSpec, a: ExtElement) -> SplitSpec {
    spec.shifted(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    /// `(x^q − x)^{N·p^n − 1}` with a nonzero exponent.
    UniformPower {
        #[serde(rename = "N")]
        order: u64,
        #[serde(rename = "n")]
        power: u32,
    },
    TriviallyPerfect,
    /// `F(x − a)` for a registered family `F`, with the smallest such `a`.
    FamilyShift {
        family: String,
        shift: ExtElement,
    },
    Other,
    NotPerfect,
}

impl Classification {
    pub const BUCKETS: [&'static str; 5] =
        ["uniform-power", "trivially-perfect", "family-shift", "other", "not-perfect"];

    pub fn bucket(&self) -> &'static str {
        match self {
            Classification::UniformPower { .. } => "uniform-power",
            Classification::TriviallyPerfect => "trivially-perfect",
            Classification::FamilyShift { .. } => "family-shift",
            Classification::Other => "other",
            Classification::NotPerfect => "not-perfect",
        }
    }
}

/// First registered family with a translate equal to `spec`.
pub fn match_family(spec: &SplitSpec, families: &[Family]) -> Option<(String, ExtElement)> {
    families
        .iter()
        .find_map(|fam| spec.field().elements().find(|&a| fam.spec.shifted(a) == *spec).map(|a| (fam.name.clone(), a)))
}

/// Buckets one spec, in precedence order: uniform power, trivially
/// perfect, shift of a registered family, other.
pub fn classify_spec(spec: &SplitSpec, families: &[Family], degree_bound: usize) -> Result<Classification> {
    if !is_perfect(spec.field(), &spec.to_split_poly(), degree_bound)? {
        return Ok(Classification::NotPerfect);
    }
    let first = spec.patterns()[0];
    if !first.is_absent() && spec.patterns().iter().all(|&p| p == first) {
        return Ok(Classification::UniformPower { order: first.order, power: first.power });
    }
    if is_trivially_perfect(spec, degree_bound)? {
        return Ok(Classification::TriviallyPerfect);
    }
    if let Some((family, shift)) = match_family(spec, families) {
        return Ok(Classification::FamilyShift { family, shift });
    }
    Ok(Classification::Other)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedSpec {
    pub spec: SplitSpec,
    #[serde(flatten)]
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    /// Every bucket, including empty ones.
    pub counts: BTreeMap<String, usize>,
    /// Distinct translates observed per registered family.
    pub family_shifts: BTreeMap<String, usize>,
    pub specs: Vec<ClassifiedSpec>,
}

impl ClassificationReport {
    pub fn count(&self, bucket: &str) -> usize {
        self.counts.get(bucket).copied().unwrap_or(0)
    }
}

/// Classifies a result list against the families registered for its field.
/// Duplicate specs are collapsed.
pub fn classify(results: &[SplitSpec], degree_bound: usize) -> Result<ClassificationReport> {
    let mut counts: BTreeMap<String, usize> = Classification::BUCKETS.iter().map(|b| (b.to_string(), 0)).collect();
    let mut family_shifts = BTreeMap::new();
    let mut sorted = results.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut specs = Vec::with_capacity(sorted.len());
    let mut families: Option<Vec<Family>> = None;
    for spec in sorted {
        let families = families.get_or_insert_with(|| registered_families(spec.field()));
        for fam in families.iter() {
            family_shifts.entry(fam.name.clone()).or_insert(0);
        }
        let classification = classify_spec(&spec, families, degree_bound)?;
        *counts.get_mut(classification.bucket()).expect("known bucket") += 1;
        if let Classification::FamilyShift { family, .. } = &classification {
            *family_shifts.get_mut(family).expect("registered") += 1;
        }
        specs.push(ClassifiedSpec { spec, classification });
    }
    Ok(ClassificationReport { counts, family_shifts, specs })
}
