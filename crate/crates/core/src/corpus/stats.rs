//! Corpus summary statistics.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{CorpusEntry, MixPlan};
use crate::catalog::{fg_histogram, FGMatch};

/// Record flow through one input stream: `input = output + dropped + deduped`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub input: usize,
    pub output: usize,
    /// Unparsable or unannotatable records plus excluded ones.
    pub dropped: usize,
    /// The part of `dropped` removed by the product blacklist.
    pub excluded: usize,
    pub deduped: usize,
}

impl StageCounts {
    pub fn balanced(&self) -> bool {
        self.input == self.output + self.dropped + self.deduped
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub entries: usize,
    pub per_format: BTreeMap<String, usize>,
    pub per_source: BTreeMap<String, usize>,
    pub functional_groups: BTreeMap<String, usize>,
    pub approximate_tokens: usize,
    pub molecules: StageCounts,
    pub reactions: StageCounts,
    pub mix: Option<MixPlan>,
}

/// Word runs and punctuation marks, a rough stand-in for tokenizer counts.
pub fn approximate_tokens(text: &str) -> usize {
    let mut count = 0;
    let mut in_word = false;
    for c in text.chars() {
        if c.is_alphanumeric() {
            if !in_word {
                count += 1;
            }
            in_word = true;
        } else {
            in_word = false;
            if !c.is_whitespace() {
                count += 1;
            }
        }
    }
    count
}

pub fn corpus_stats<'a>(entries: &[CorpusEntry], annotations: impl IntoIterator<Item = &'a [FGMatch]>) -> CorpusStats {
    let mut stats = CorpusStats {
        entries: entries.len(),
        functional_groups: fg_histogram(annotations),
        ..CorpusStats::default()
    };
    for e in entries {
        *stats.per_format.entry(e.format.to_string()).or_insert(0) += 1;
        let source = e.source_id.split(':').next().unwrap_or_default();
        *stats.per_source.entry(source.to_string()).or_insert(0) += 1;
        stats.approximate_tokens += approximate_tokens(&e.text);
    }
    stats
}
