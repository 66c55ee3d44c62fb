//! End-to-end corpus build over molecule and reaction inputs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::stats::{corpus_stats, CorpusStats, StageCounts};
use super::{
    augment_reaction, dedupe, exclusion_filter, format_molecule_entry, format_reaction_entry, plan_mix, Blacklist,
    CorpusEntry, CorpusError, EntryFormat, MixPlan, MoleculeRecord, ReactionRecord,
};
use crate::catalog::Catalog;
use crate::rxn::Quality;

#[derive(Debug, Clone)]
pub struct BuildConfig {
    pub seed: u64,
    /// Renderings per reaction, the original included.
    pub augment: usize,
    pub formats: Vec<EntryFormat>,
    /// Blend of entry sources (`molecule`, `reaction`) in the output.
    pub mix: Option<MixSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixSpec {
    pub ratio: Vec<(String, f64)>,
    pub max_total: Option<u64>,
}

impl BuildConfig {
    pub fn new(seed: u64) -> BuildConfig {
        BuildConfig { seed, augment: 10, formats: EntryFormat::ALL.to_vec(), mix: None }
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub molecules: Vec<MoleculeRecord>,
    pub reactions: Vec<ReactionRecord>,
    pub stats: CorpusStats,
}

impl Corpus {
    /// One JSON object per line, newline terminated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entries serialize"));
            out.push('\n');
        }
        out
    }
}

fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn pick_format(formats: &[EntryFormat], rng: &mut ChaCha8Rng) -> EntryFormat {
    if formats.is_empty() {
        EntryFormat::MarkdownList
    } else {
        formats[rng.gen_range(0..formats.len())]
    }
}

/// Fails only when a mix is requested that the inputs cannot supply.
/// Molecules: one SMILES per line with optional tab-separated property JSON.
/// Reactions: one atom-mapped reaction SMILES per line. Invalid lines are
/// counted as dropped rather than failing the build.
pub fn build_corpus(
    molecules: &str,
    reactions: &str,
    blacklist: &Blacklist,
    catalog: &Catalog,
    config: &BuildConfig,
) -> Result<Corpus, CorpusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut mol_counts = StageCounts::default();
    let mut parsed = Vec::new();
    for (number, line) in records(molecules) {
        mol_counts.input += 1;
        match MoleculeRecord::from_line(line, number) {
            Ok(mut rec) => {
                rec.annotate(catalog).expect("from_line checked the SMILES");
                parsed.push(rec);
            }
            Err(_) => mol_counts.dropped += 1,
        }
    }
    let unique = dedupe(parsed);
    mol_counts.deduped = unique.removed;
    mol_counts.output = unique.kept.len();

    let mut rxn_counts = StageCounts::default();
    let mut parsed = Vec::new();
    for (_, line) in records(reactions) {
        rxn_counts.input += 1;
        match ReactionRecord::new(line.trim(), catalog) {
            Ok(rec) => parsed.push(rec),
            Err(_) => rxn_counts.dropped += 1,
        }
    }
    let unique_rxns = dedupe(parsed);
    rxn_counts.deduped = unique_rxns.removed;
    let allowed = exclusion_filter(unique_rxns.kept, blacklist);
    rxn_counts.excluded = allowed.removed;
    rxn_counts.dropped += allowed.removed;
    rxn_counts.output = allowed.kept.len();

    let mut entries = Vec::new();
    for rec in &unique.kept {
        let kind = pick_format(&config.formats, &mut rng);
        entries.push(format_molecule_entry(rec, kind, rng.next_u64()));
    }
    let mut reactions_out = Vec::with_capacity(allowed.kept.len());
    for rec in allowed.kept {
        let seed = rng.next_u64();
        let rec = if rec.quality == Quality::Ok { augment_reaction(&rec, config.augment, seed) } else { rec };
        for i in 0..rec.augmentations.len() {
            let kind = pick_format(&config.formats, &mut rng);
            entries.push(format_reaction_entry(&rec, i, kind));
        }
        reactions_out.push(rec);
    }

    let mix = match &config.mix {
        Some(spec) => {
            let (selected, plan) = apply_mix(entries, spec, &mut rng)?;
            entries = selected;
            Some(plan)
        }
        None => None,
    };

    let mut stats = corpus_stats(&entries, unique.kept.iter().map(|r| r.fg_annotation.as_slice()));
    stats.molecules = mol_counts;
    stats.reactions = rxn_counts;
    stats.mix = mix;
    Ok(Corpus { entries, molecules: unique.kept, reactions: reactions_out, stats })
}

/// Entry source of a `source_id` such as `molecule:CCO`.
fn source_of(entry: &CorpusEntry) -> &str {
    entry.source_id.split(':').next().unwrap_or_default()
}

/// Keeps a seeded selection of each source's entries, sized by the mix
/// plan, in their original order.
fn apply_mix(entries: Vec<CorpusEntry>, spec: &MixSpec, rng: &mut ChaCha8Rng) -> Result<(Vec<CorpusEntry>, MixPlan), CorpusError> {
    let mut available: BTreeMap<String, u64> = spec.ratio.iter().map(|(k, _)| (k.clone(), 0)).collect();
    for e in &entries {
        *available.entry(source_of(e).to_string()).or_insert(0) += 1;
    }
    let plan = plan_mix(&available, &spec.ratio, rng.next_u64(), spec.max_total)?;
    let mut keep = vec![false; entries.len()];
    for (source, &quota) in &plan.quotas {
        let mut members: Vec<usize> = (0..entries.len()).filter(|&i| source_of(&entries[i]) == source).collect();
        members.shuffle(rng);
        for &i in members.iter().take(quota as usize) {
            keep[i] = true;
        }
    }
    let selected = entries.into_iter().zip(keep).filter_map(|(e, k)| k.then_some(e)).collect();
    Ok((selected, plan))
}
