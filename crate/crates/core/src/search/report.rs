use std::collections::BTreeMap;

use serde::Serialize;

use super::classify::{classify, ClassifiedSpec};
use super::{SearchOptions, SearchOutcome, SearchStats};
use crate::error::Result;
use crate::field::FieldSpec;

/// Inputs that determine the output. Thread count is deliberately absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub field: FieldSpec,
    pub n_max: u32,
    #[serde(rename = "uniform_N")]
    pub uniform_order: Option<u64>,
    pub prune: bool,
    pub candidates: u64,
}

/// Serializable search result: classified specs plus bucket counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: SearchParams,
    pub counts: BTreeMap<String, usize>,
    pub family_shifts: BTreeMap<String, usize>,
    pub stats: SearchStats,
    pub specs: Vec<ClassifiedSpec>,
}

impl SearchReport {
    pub fn new(field: &FieldSpec, options: &SearchOptions, outcome: &SearchOutcome) -> Result<Self> {
        let classified = classify(&outcome.specs, options.limits.degree_bound)?;
        Ok(SearchReport {
            params: SearchParams {
                field: *field,
                n_max: options.n_max,
                uniform_order: options.uniform_order,
                prune: options.prune,
                candidates: outcome.stats.candidates,
            },
            counts: classified.counts,
            family_shifts: classified.family_shifts,
            stats: outcome.stats,
            specs: classified.specs,
        })
    }

    pub fn count(&self, bucket: &str) -> usize {
        self.counts.get(bucket).copied().unwrap_or(0)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
