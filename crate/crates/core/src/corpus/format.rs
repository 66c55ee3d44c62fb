//! Corpus entries in markdown-list, markdown-table and JSON-dictionary form.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{MoleculeRecord, ReactionRecord};
use crate::catalog::group_names;
use crate::mol::{parse_smiles, write_canonical};
use crate::rxn::{describe, GroupChange};

pub const FUNCTIONAL_GROUPS_KEY: &str = "functional groups";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryFormat {
    MarkdownList,
    MarkdownTable,
    JsonDict,
}

impl EntryFormat {
    pub const ALL: [EntryFormat; 3] = [EntryFormat::MarkdownList, EntryFormat::MarkdownTable, EntryFormat::JsonDict];

    pub fn as_str(self) -> &'static str {
        match self {
            EntryFormat::MarkdownList => "markdown_list",
            EntryFormat::MarkdownTable => "markdown_table",
            EntryFormat::JsonDict => "json_dict",
        }
    }

    pub fn from_name(name: &str) -> Option<EntryFormat> {
        EntryFormat::ALL.into_iter().find(|f| f.as_str() == name)
    }
}

impl fmt::Display for EntryFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub format: EntryFormat,
    pub text: String,
    pub source_id: String,
}

fn join_groups(names: Vec<String>) -> String {
    let mut names = names;
    names.dedup();
    if names.is_empty() {
        "none".to_string()
    } else {
        names.join(", ")
    }
}

fn render(pairs: &[(String, String)], kind: EntryFormat) -> String {
    match kind {
        EntryFormat::MarkdownList => pairs
            .iter()
            .map(|(k, v)| format!("- {k}: {}", one_line(v)))
            .collect::<Vec<_>>()
            .join("\n"),
        EntryFormat::MarkdownTable => {
            let mut lines = vec!["| key | value |".to_string(), "| --- | --- |".to_string()];
            lines.extend(pairs.iter().map(|(k, v)| format!("| {} | {} |", cell(k), cell(v))));
            lines.join("\n")
        }
        EntryFormat::JsonDict => {
            let map: serde_json::Map<String, serde_json::Value> =
                pairs.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
            serde_json::Value::Object(map).to_string()
        }
    }
}

fn one_line(v: &str) -> String {
    v.replace(['\n', '\r'], " ")
}

fn cell(v: &str) -> String {
    one_line(v).replace('|', "\\|")
}

/// Key-value pairs of a molecule record: identifiers first, then the
/// properties and the functional-group list in seeded order.
fn molecule_pairs(rec: &MoleculeRecord, seed: u64) -> Vec<(String, String)> {
    let mut pairs = vec![("SMILES".to_string(), rec.smiles.clone())];
    pairs.extend(rec.names.iter().map(|(k, v)| (k.clone(), v.clone())));
    if let Some(d) = &rec.description {
        pairs.push(("description".to_string(), d.clone()));
    }
    let mut shuffled = rec.properties.clone();
    shuffled.push((FUNCTIONAL_GROUPS_KEY.to_string(), join_groups(group_names(&rec.fg_annotation))));
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    pairs.extend(shuffled);
    pairs
}

pub fn format_molecule_entry(rec: &MoleculeRecord, kind: EntryFormat, seed: u64) -> CorpusEntry {
    let source = parse_smiles(&rec.smiles).map(|m| write_canonical(&m)).unwrap_or_else(|_| rec.smiles.clone());
    CorpusEntry {
        format: kind,
        text: render(&molecule_pairs(rec, seed), kind),
        source_id: format!("molecule:{source}"),
    }
}

fn names_of(groups: &[GroupChange]) -> String {
    let mut names: Vec<String> = groups.iter().map(|g| g.group_name.clone()).collect();
    names.sort();
    join_groups(names)
}

/// One entry for the `index`-th rendering of a reaction record.
pub fn format_reaction_entry(rec: &ReactionRecord, index: usize, kind: EntryFormat) -> CorpusEntry {
    let rendering = rec.augmentations.get(index).unwrap_or(&rec.rxn_smiles);
    let pairs = vec![
        ("reaction".to_string(), rendering.clone()),
        ("reacting functional groups".to_string(), names_of(&rec.change.reacting_groups)),
        ("resulting functional groups".to_string(), names_of(&rec.change.resulting_groups)),
        ("description".to_string(), describe(&rec.change)),
    ];
    CorpusEntry {
        format: kind,
        text: render(&pairs, kind),
        source_id: format!("reaction:{}", rec.reaction().canonical_smiles()),
    }
}
