use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Catalog;
use crate::mol::Molecule;
use crate::smarts::Matcher;

/// One functional-group instance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FGMatch {
    pub group_name: String,
    /// Sorted atom indices covered by the pattern.
    pub atoms: Vec<usize>,
}

/// All group instances in `mol`. An instance is dropped when its atoms are
/// a strict subset of an instance of a higher-priority group.
pub fn perceive(mol: &Molecule, catalog: &Catalog) -> Vec<FGMatch> {
    let mut matcher = Matcher::new(mol);
    // (definition index, atoms)
    let mut found: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, def) in catalog.definitions().iter().enumerate() {
        for m in matcher.match_all(&def.pattern) {
            found.push((i, m.atoms()));
        }
    }
    let defs = catalog.definitions();
    let outranks = |a: usize, b: usize| defs[a].priority > defs[b].priority || (defs[a].priority == defs[b].priority && a < b);
    let mut out: Vec<FGMatch> = found
        .iter()
        .filter(|(i, atoms)| {
            !found
                .iter()
                .any(|(j, other)| outranks(*j, *i) && other.len() > atoms.len() && is_subset(atoms, other))
        })
        .map(|(i, atoms)| FGMatch {
            group_name: defs[*i].name.clone(),
            atoms: atoms.clone(),
        })
        .collect();
    out.sort();
    out
}

/// Whether sorted `a` is contained in sorted `b`.
fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut k = 0;
    for &x in a {
        while k < b.len() && b[k] < x {
            k += 1;
        }
        if k == b.len() || b[k] != x {
            return false;
        }
        k += 1;
    }
    true
}

/// Group names of a perception result, sorted, with repeats.
pub fn group_names(matches: &[FGMatch]) -> Vec<String> {
    let mut names: Vec<String> = matches.iter().map(|m| m.group_name.clone()).collect();
    names.sort();
    names
}

/// Occurrence count per group name over a stream of perception results.
pub fn fg_histogram<'a>(results: impl IntoIterator<Item = &'a [FGMatch]>) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for matches in results {
        for m in matches {
            *counts.entry(m.group_name.clone()).or_insert(0) += 1;
        }
    }
    counts
}
