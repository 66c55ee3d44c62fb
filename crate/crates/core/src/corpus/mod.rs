//! Corpus construction: record types, entry formatting, leakage exclusion,
//! deduplication, reaction augmentation, mix planning and statistics.

mod augment;
mod build;
mod filter;
mod format;
mod mix;
mod stats;

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{perceive, Catalog, FGMatch};
use crate::mol::{parse_smiles, write_canonical, SmilesError};
use crate::rxn::{fg_changes, parse_reaction, ChangeSet, Quality, Reaction, RxnError};

pub use augment::augment_reaction;
pub use build::{build_corpus, BuildConfig, Corpus, MixSpec};
pub use filter::{dedupe, exclusion_filter, Blacklist, DedupKey, Filtered};
pub use format::{format_molecule_entry, format_reaction_entry, CorpusEntry, EntryFormat};
pub use mix::{plan_mix, MixPlan};
pub use stats::{corpus_stats, CorpusStats, StageCounts};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {error}")]
    Smiles { line: usize, error: SmilesError },
    #[error("line {line}: {error}")]
    Reaction { line: usize, error: RxnError },
    #[error("line {line}: bad property JSON: {message}")]
    Properties { line: usize, message: String },
    #[error("duplicate property key {key:?}")]
    DuplicateKey { key: String },
    #[error("source {source_name:?} has no available entries")]
    Unavailable { source_name: String },
    #[error("invalid mix weight for {source_name:?}")]
    Weight { source_name: String },
    #[error("empty ratio specification")]
    EmptyRatio,
}

/// A molecule with its notations, description and properties.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeRecord {
    pub smiles: String,
    pub names: BTreeMap<String, String>,
    pub description: Option<String>,
    /// Ordered, unique keys.
    pub properties: Vec<(String, String)>,
    pub fg_annotation: Vec<FGMatch>,
}

impl MoleculeRecord {
    pub fn new(smiles: impl Into<String>) -> MoleculeRecord {
        MoleculeRecord {
            smiles: smiles.into(),
            names: BTreeMap::new(),
            description: None,
            properties: Vec::new(),
            fg_annotation: Vec::new(),
        }
    }

    pub fn with_property(mut self, key: impl Into<String>, value: impl Into<String>) -> Result<Self, CorpusError> {
        self.properties.push((key.into(), value.into()));
        self.check_keys()?;
        Ok(self)
    }

    /// Parses one input line: SMILES, optionally followed by a tab and a JSON
    /// object. The keys `names` (object) and `description` (string) fill
    /// those fields; every other key becomes a property.
    pub fn from_line(line: &str, number: usize) -> Result<MoleculeRecord, CorpusError> {
        let (smiles, json) = match line.split_once('\t') {
            Some((s, j)) => (s.trim(), Some(j.trim())),
            None => (line.trim(), None),
        };
        parse_smiles(smiles).map_err(|error| CorpusError::Smiles { line: number, error })?;
        let mut rec = MoleculeRecord::new(smiles);
        let Some(json) = json.filter(|j| !j.is_empty()) else {
            return Ok(rec);
        };
        let bad = |message: String| CorpusError::Properties { line: number, message };
        let value: serde_json::Value = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
        let object = value.as_object().ok_or_else(|| bad("expected an object".into()))?;
        for (key, value) in object {
            match (key.as_str(), value) {
                ("names", serde_json::Value::Object(names)) => {
                    for (k, v) in names {
                        rec.names.insert(k.clone(), plain(v));
                    }
                }
                ("description", serde_json::Value::String(d)) => rec.description = Some(d.clone()),
                _ => rec.properties.push((key.clone(), plain(value))),
            }
        }
        rec.check_keys()?;
        Ok(rec)
    }

    /// Every key of the formatted entry must be distinct.
    fn check_keys(&self) -> Result<(), CorpusError> {
        let mut seen = std::collections::HashSet::from(["SMILES", "description", format::FUNCTIONAL_GROUPS_KEY]);
        for key in self.names.keys().chain(self.properties.iter().map(|(k, _)| k)) {
            if !seen.insert(key.as_str()) {
                return Err(CorpusError::DuplicateKey { key: key.clone() });
            }
        }
        Ok(())
    }

    pub fn annotate(&mut self, catalog: &Catalog) -> Result<(), SmilesError> {
        self.fg_annotation = perceive(&parse_smiles(&self.smiles)?, catalog);
        Ok(())
    }

    pub fn canonical(&self) -> Option<String> {
        parse_smiles(&self.smiles).ok().map(|m| write_canonical(&m))
    }
}

fn plain(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Serialize for MoleculeRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Pairs<'a>(&'a [(String, String)]);
        impl Serialize for Pairs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("smiles", &self.smiles)?;
        m.serialize_entry("names", &self.names)?;
        m.serialize_entry("description", &self.description)?;
        m.serialize_entry("properties", &Pairs(&self.properties))?;
        m.serialize_entry("fg_annotation", &self.fg_annotation)?;
        m.end()
    }
}

/// An annotated reaction and its augmented renderings.
#[derive(Debug, Clone, Serialize)]
pub struct ReactionRecord {
    pub rxn_smiles: String,
    pub change: ChangeSet,
    pub quality: Quality,
    pub augmentations: Vec<String>,
    #[serde(skip)]
    reaction: Reaction,
}

impl ReactionRecord {
    pub fn new(rxn_smiles: &str, catalog: &Catalog) -> Result<ReactionRecord, RxnError> {
        let reaction = parse_reaction(rxn_smiles)?;
        let change = fg_changes(&reaction, catalog)?;
        Ok(ReactionRecord {
            rxn_smiles: rxn_smiles.to_string(),
            quality: change.quality,
            change,
            augmentations: vec![rxn_smiles.to_string()],
            reaction,
        })
    }

    pub fn reaction(&self) -> &Reaction {
        &self.reaction
    }

    /// Canonical SMILES of each product molecule, maps removed.
    pub fn canonical_products(&self) -> Vec<String> {
        self.reaction
            .products
            .iter()
            .map(write_canonical)
            .collect()
    }
}
