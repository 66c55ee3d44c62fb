//! Reaction augmentation by randomized SMILES renderings.

use std::collections::HashSet;

use super::ReactionRecord;
use crate::mol::{enumerate_random, Molecule};

/// Fills `augmentations` with `factor` renderings, the original first. Each
/// further rendering combines randomized renderings of every molecule; when
/// a reaction has fewer distinct renderings than requested, the list is
/// padded by repeating earlier ones.
pub fn augment_reaction(rec: &ReactionRecord, factor: usize, seed: u64) -> ReactionRecord {
    let factor = factor.max(1);
    let rxn = rec.reaction();
    let sides = [&rxn.reactants, &rxn.reagents, &rxn.products];
    let renderings: Vec<Vec<Vec<String>>> = sides
        .iter()
        .enumerate()
        .map(|(s, mols)| {
            mols.iter()
                .enumerate()
                .map(|(m, mol)| per_molecule(mol, factor, seed, s, m))
                .collect()
        })
        .collect();

    let mut out = vec![rec.rxn_smiles.clone()];
    let mut seen: HashSet<String> = out.iter().cloned().collect();
    let attempts = factor * 4;
    for j in 0..attempts {
        if out.len() >= factor {
            break;
        }
        let text = renderings
            .iter()
            .map(|side| {
                side.iter()
                    .enumerate()
                    .map(|(m, list)| list[(j + m * (j / list.len())) % list.len()].as_str())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect::<Vec<_>>()
            .join(">");
        if seen.insert(text.clone()) {
            out.push(text);
        }
    }
    let distinct = out.len();
    while out.len() < factor {
        out.push(out[out.len() % distinct].clone());
    }
    let mut rec = rec.clone();
    rec.augmentations = out;
    rec
}

fn per_molecule(mol: &Molecule, factor: usize, seed: u64, side: usize, index: usize) -> Vec<String> {
    let salt = (side as u64) << 32 | index as u64;
    let list = enumerate_random(mol, factor, seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    if list.is_empty() {
        vec![String::new()]
    } else {
        list
    }
}
