mod common;

use std::collections::BTreeMap;

use chemfg::catalog::{fg_histogram, perceive, Catalog};
use chemfg::corpus::{
    build_corpus, dedupe, exclusion_filter, format_molecule_entry, Blacklist, BuildConfig, EntryFormat, MoleculeRecord,
    ReactionRecord,
};
use chemfg::mol::parse_smiles;
use common::fixtures::{corpus_labels, reactions, text};

fn catalog() -> Catalog {
    Catalog::bundled().unwrap()
}

#[test]
fn histogram_matches_recount() {
    let catalog = catalog();
    let labels = corpus_labels();
    assert_eq!(labels.len(), 1000);
    let perceived: Vec<_> = labels.iter().map(|(s, _)| perceive(&parse_smiles(s).unwrap(), &catalog)).collect();
    let got = fg_histogram(perceived.iter().map(Vec::as_slice));
    let mut want: BTreeMap<String, usize> = BTreeMap::new();
    for name in labels.iter().flat_map(|(_, g)| g) {
        *want.entry(name.clone()).or_insert(0) += 1;
    }
    assert_eq!(got, want);
}

#[test]
fn blacklist_drops_exactly_the_listed_products() {
    let catalog = catalog();
    let blacklist = Blacklist::parse(&text("blacklist.smi")).unwrap();
    assert_eq!(blacklist.len(), 7);
    let records: Vec<ReactionRecord> = reactions().iter().map(|r| ReactionRecord::new(r, &catalog).unwrap()).collect();
    let out = exclusion_filter(records, &blacklist);
    assert_eq!(out.removed, 7);
    assert_eq!(out.kept.len(), 93);
    for rec in &out.kept {
        assert!(rec.canonical_products().iter().all(|p| !blacklist.contains(p)));
    }
}

#[test]
fn planted_duplicates_are_removed() {
    let records: Vec<MoleculeRecord> = text("dedupe_molecules.smi").lines().map(MoleculeRecord::new).collect();
    assert_eq!(records.len(), 200);
    let out = dedupe(records);
    assert_eq!((out.kept.len(), out.removed), (187, 13));
}

fn parse_pairs(kind: EntryFormat, text: &str) -> Vec<(String, String)> {
    let mut pairs: Vec<(String, String)> = match kind {
        EntryFormat::MarkdownList => text
            .lines()
            .map(|l| {
                let (k, v) = l.strip_prefix("- ").unwrap().split_once(": ").unwrap();
                (k.to_string(), v.to_string())
            })
            .collect(),
        EntryFormat::MarkdownTable => text
            .lines()
            .skip(2)
            .map(|l| {
                let inner = l.strip_prefix("| ").unwrap().strip_suffix(" |").unwrap().replace("\\|", "\u{0}");
                let (k, v) = inner.split_once(" | ").unwrap();
                (k.replace('\u{0}', "|"), v.replace('\u{0}', "|"))
            })
            .collect(),
        EntryFormat::JsonDict => {
            let v: serde_json::Value = serde_json::from_str(text).unwrap();
            v.as_object().unwrap().iter().map(|(k, v)| (k.clone(), v.as_str().unwrap().to_string())).collect()
        }
    };
    pairs.sort();
    pairs
}

#[test]
fn formats_carry_the_same_pairs() {
    let catalog = catalog();
    for line in text("pipeline_molecules.tsv").lines().take(200) {
        let Ok(mut rec) = MoleculeRecord::from_line(line, 1) else { continue };
        rec.annotate(&catalog).unwrap();
        let seen: Vec<_> = EntryFormat::ALL
            .iter()
            .map(|&k| parse_pairs(k, &format_molecule_entry(&rec, k, 17).text))
            .collect();
        assert_eq!(seen[0], seen[1], "{line}");
        assert_eq!(seen[0], seen[2], "{line}");
    }
}

#[test]
fn pipeline_is_deterministic_and_conserves_records() {
    let catalog = catalog();
    let mols = text("pipeline_molecules.tsv");
    let rxns = text("pipeline_reactions.smi");
    let blacklist = Blacklist::parse(&text("blacklist.smi")).unwrap();
    let config = BuildConfig::new(20240601);
    let a = build_corpus(&mols, &rxns, &blacklist, &catalog, &config).unwrap();
    let b = build_corpus(&mols, &rxns, &blacklist, &catalog, &config).unwrap();
    assert_eq!(a.to_jsonl(), b.to_jsonl());
    let (m, r) = (a.stats.molecules, a.stats.reactions);
    assert_eq!(m.input + r.input, 1000);
    assert!(m.balanced() && r.balanced());
    assert_eq!((m.input, m.output, m.dropped, m.deduped), (700, 640, 15, 45));
    assert_eq!(r.dropped - r.excluded, 20);
    assert_eq!(r.output, 93);
    let other = build_corpus(&mols, &rxns, &blacklist, &catalog, &BuildConfig::new(1)).unwrap();
    assert_ne!(a.to_jsonl(), other.to_jsonl());
}
