//! Shared fixture loaders.

use std::path::PathBuf;

use chemfg::mol::{parse_smiles, Molecule};

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Molecules of the corpus fixture, when present.
pub fn corpus_molecules() -> Vec<(String, Molecule)> {
    let Ok(text) = std::fs::read_to_string(path("corpus_molecules.jsonl")) else {
        return Vec::new();
    };
    text.lines()
        .filter_map(|l| serde_json::from_str::<serde_json::Value>(l).ok())
        .filter_map(|v| v.get("smiles").and_then(|s| s.as_str()).map(str::to_string))
        .filter_map(|s| parse_smiles(&s).ok().map(|m| (s, m)))
        .collect()
}

fn data_lines(name: &str) -> Vec<String> {
    std::fs::read_to_string(path(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Mapped reaction SMILES, one per line.
pub fn reactions() -> Vec<String> {
    data_lines("reactions.smi")
}

pub struct GoldenReaction {
    pub smiles: String,
    pub reacting: Vec<String>,
    pub resulting: Vec<String>,
    pub rings_broken: Vec<usize>,
    pub rings_formed: Vec<usize>,
    pub extra_bond_changes: usize,
}

fn split<T: std::str::FromStr>(field: &str, sep: char) -> Vec<T> {
    field
        .split(sep)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().ok().expect("fixture field"))
        .collect()
}

pub fn golden_reactions() -> Vec<GoldenReaction> {
    data_lines("reactions_golden.tsv")
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            GoldenReaction {
                smiles: f[0].to_string(),
                reacting: split(f[1], ';'),
                resulting: split(f[2], ';'),
                rings_broken: split(f[3], ','),
                rings_formed: split(f[4], ','),
                extra_bond_changes: f[5].parse().unwrap(),
            }
        })
        .collect()
}

pub fn text(name: &str) -> String {
    std::fs::read_to_string(path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Group names per corpus molecule as labelled when the fixture was made.
pub fn corpus_labels() -> Vec<(String, Vec<String>)> {
    text("corpus_molecules.jsonl")
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            let groups = v["groups"].as_array().unwrap().iter().map(|g| g.as_str().unwrap().to_string()).collect();
            (v["smiles"].as_str().unwrap().to_string(), groups)
        })
        .collect()
}
