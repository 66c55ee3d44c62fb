//! Test-set exclusion by product and exact canonical deduplication.

use std::collections::HashSet;

use super::{CorpusError, MoleculeRecord, ReactionRecord};
use crate::mol::{parse_smiles, write_canonical};

/// Canonical SMILES that must not appear as a reaction product.
#[derive(Debug, Clone, Default)]
pub struct Blacklist {
    canonical: HashSet<String>,
}

impl Blacklist {
    /// One SMILES per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Blacklist, CorpusError> {
        let mut canonical = HashSet::new();
        for (i, line) in text.lines().enumerate() {
            let s = line.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let mol = parse_smiles(s).map_err(|error| CorpusError::Smiles { line: i + 1, error })?;
            canonical.insert(write_canonical(&mol));
        }
        Ok(Blacklist { canonical })
    }

    pub fn from_canonical(entries: impl IntoIterator<Item = String>) -> Blacklist {
        Blacklist { canonical: entries.into_iter().collect() }
    }

    pub fn contains(&self, canonical: &str) -> bool {
        self.canonical.contains(canonical)
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }
}

/// Survivors of a filtering stage and how many records it removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtered<T> {
    pub kept: Vec<T>,
    pub removed: usize,
}

pub fn exclusion_filter(records: impl IntoIterator<Item = ReactionRecord>, blacklist: &Blacklist) -> Filtered<ReactionRecord> {
    let mut removed = 0;
    let kept = records
        .into_iter()
        .filter(|r| {
            let hit = r.canonical_products().iter().any(|p| blacklist.contains(p));
            removed += usize::from(hit);
            !hit
        })
        .collect();
    Filtered { kept, removed }
}

/// Identity used for exact deduplication.
pub trait DedupKey {
    fn dedup_key(&self) -> String;
}

impl DedupKey for MoleculeRecord {
    fn dedup_key(&self) -> String {
        self.canonical().unwrap_or_else(|| self.smiles.clone())
    }
}

impl DedupKey for ReactionRecord {
    fn dedup_key(&self) -> String {
        self.reaction().canonical_smiles()
    }
}

/// Keeps the first record of every key, in input order.
pub fn dedupe<T: DedupKey>(records: impl IntoIterator<Item = T>) -> Filtered<T> {
    let mut seen = HashSet::new();
    let mut removed = 0;
    let kept = records
        .into_iter()
        .filter(|r| {
            let fresh = seen.insert(r.dedup_key());
            removed += usize::from(!fresh);
            fresh
        })
        .collect();
    Filtered { kept, removed }
}
