use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::{centers::reaction_centers, describe::describe, AtomRef, Quality, Reaction, RxnError, Side};
use crate::catalog::{perceive, Catalog};
use crate::mol::{ring_basis, BondOrder, Molecule};

/// A functional group instance on one side of a reaction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupChange {
    pub group_name: String,
    pub molecule: usize,
    pub atoms: Vec<usize>,
    /// Map numbers of the mapped atoms, sorted.
    pub maps: Vec<u32>,
    /// Number of matched atoms without a map number.
    pub unmapped: usize,
}

impl GroupChange {
    fn identity(&self) -> (&str, &[u32], usize) {
        (&self.group_name, &self.maps, self.unmapped)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RingEvents {
    pub count: usize,
    pub sizes: Vec<usize>,
}

/// A bond between two mapped atoms whose order differs across the arrow.
/// `None` means no bond on that side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BondChange {
    pub maps: (u32, u32),
    pub before: Option<BondOrder>,
    pub after: Option<BondOrder>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeSet {
    pub reacting_groups: Vec<GroupChange>,
    pub resulting_groups: Vec<GroupChange>,
    pub rings_broken: RingEvents,
    pub rings_formed: RingEvents,
    pub extra_bond_changes: Vec<BondChange>,
    pub quality: Quality,
}

impl ChangeSet {
    pub fn is_empty(&self) -> bool {
        self.reacting_groups.is_empty()
            && self.resulting_groups.is_empty()
            && self.rings_broken.count == 0
            && self.rings_formed.count == 0
            && self.extra_bond_changes.is_empty()
    }

    pub fn reacting_names(&self) -> Vec<String> {
        sorted_names(&self.reacting_groups)
    }

    pub fn resulting_names(&self) -> Vec<String> {
        sorted_names(&self.resulting_groups)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "reacting_groups": self.reacting_groups,
            "resulting_groups": self.resulting_groups,
            "rings_broken": self.rings_broken,
            "rings_formed": self.rings_formed,
            "extra_bond_changes": self.extra_bond_changes,
            "quality": self.quality,
            "description": describe(self),
        })
    }
}

impl Serialize for ChangeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn sorted_names(groups: &[GroupChange]) -> Vec<String> {
    let mut v: Vec<String> = groups.iter().map(|g| g.group_name.clone()).collect();
    v.sort();
    v
}

fn side_groups(mols: &[Molecule], catalog: &Catalog) -> Vec<GroupChange> {
    let mut out = Vec::new();
    for (i, mol) in mols.iter().enumerate() {
        for m in perceive(mol, catalog) {
            let mut maps: Vec<u32> = m.atoms.iter().filter_map(|&a| mol.atom(a).map_number).collect();
            maps.sort_unstable();
            let unmapped = m.atoms.len() - maps.len();
            out.push(GroupChange {
                group_name: m.group_name,
                molecule: i,
                atoms: m.atoms,
                maps,
                unmapped,
            });
        }
    }
    out
}

/// Groups touching a centre that have no counterpart with the same name and
/// map image on the other side.
fn changed_groups(mine: &[GroupChange], theirs: &[GroupChange], centers: &BTreeSet<AtomRef>) -> Vec<GroupChange> {
    let present: HashSet<(&str, &[u32], usize)> = theirs.iter().map(|g| g.identity()).collect();
    mine.iter()
        .filter(|g| g.atoms.iter().any(|&a| centers.contains(&AtomRef { molecule: g.molecule, atom: a })))
        .filter(|g| !present.contains(&g.identity()))
        .cloned()
        .collect()
}

/// Bonds between atoms in `shared`, keyed by sorted map pair.
fn mapped_bonds(mols: &[Molecule], shared: &BTreeSet<u32>) -> BTreeMap<(u32, u32), BondOrder> {
    let mut out = BTreeMap::new();
    for mol in mols {
        for b in mol.bonds() {
            if let (Some(x), Some(y)) = (mol.atom(b.begin).map_number, mol.atom(b.end).map_number) {
                if shared.contains(&x) && shared.contains(&y) {
                    out.insert((x.min(y), x.max(y)), b.order);
                }
            }
        }
    }
    out
}

/// Rings of `from` (as map cycles) that lose a bond in `to`.
fn lost_rings(from: &BTreeMap<(u32, u32), BondOrder>, to: &BTreeMap<(u32, u32), BondOrder>, shared: &[u32]) -> RingEvents {
    let index: BTreeMap<u32, usize> = shared.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let edges: Vec<(usize, usize)> = from.keys().map(|(x, y)| (index[x], index[y])).collect();
    let mut sizes: Vec<usize> = ring_basis(shared.len(), &edges)
        .into_iter()
        .filter(|ring| {
            (0..ring.len()).any(|k| {
                let (a, b) = (shared[ring[k]], shared[ring[(k + 1) % ring.len()]]);
                !to.contains_key(&(a.min(b), a.max(b)))
            })
        })
        .map(|ring| ring.len())
        .collect();
    sizes.sort_unstable();
    RingEvents { count: sizes.len(), sizes }
}

pub fn fg_changes(rxn: &Reaction, catalog: &Catalog) -> Result<ChangeSet, RxnError> {
    let centers = reaction_centers(rxn)?;
    let reactant_groups = side_groups(&rxn.reactants, catalog);
    let product_groups = side_groups(&rxn.products, catalog);
    let mut reacting_groups = changed_groups(&reactant_groups, &product_groups, centers.atoms(Side::Reactant));
    let mut resulting_groups = changed_groups(&product_groups, &reactant_groups, centers.atoms(Side::Product));
    reacting_groups.sort();
    resulting_groups.sort();

    let shared_list = rxn.shared_maps();
    let shared: BTreeSet<u32> = shared_list.iter().copied().collect();
    let before = mapped_bonds(&rxn.reactants, &shared);
    let after = mapped_bonds(&rxn.products, &shared);
    let rings_broken = lost_rings(&before, &after, &shared_list);
    let rings_formed = lost_rings(&after, &before, &shared_list);

    let covered = |pair: (u32, u32)| {
        reacting_groups
            .iter()
            .chain(resulting_groups.iter())
            .any(|g| g.maps.contains(&pair.0) && g.maps.contains(&pair.1))
    };
    let pairs: BTreeSet<(u32, u32)> = before.keys().chain(after.keys()).copied().collect();
    let extra_bond_changes = pairs
        .into_iter()
        .filter_map(|pair| {
            let (b, a) = (before.get(&pair).copied(), after.get(&pair).copied());
            (b != a && !covered(pair)).then_some(BondChange { maps: pair, before: b, after: a })
        })
        .collect();

    Ok(ChangeSet {
        reacting_groups,
        resulting_groups,
        rings_broken,
        rings_formed,
        extra_bond_changes,
        quality: rxn.quality(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;
    use crate::rxn::parse_reaction;

    fn changes(s: &str) -> ChangeSet {
        fg_changes(&parse_reaction(s).unwrap(), &load_catalog(None).unwrap()).unwrap()
    }

    #[test]
    fn esterification() {
        let c = changes("[CH3:1][OH:2].[C:3](=[O:4])(O)[CH3:5]>>[CH3:1][O:2][C:3](=[O:4])[CH3:5]");
        assert_eq!(c.reacting_names(), vec!["alcohol", "carboxylic acid"]);
        assert_eq!(c.resulting_names(), vec!["ester"]);
        assert_eq!(c.rings_broken.count + c.rings_formed.count, 0);
        assert!(c.extra_bond_changes.is_empty());
    }

    #[test]
    fn identity_is_empty() {
        assert!(changes("[CH3:1][CH3:2]>>[CH3:1][CH3:2]").is_empty());
    }

    #[test]
    fn epoxide_opening() {
        let c = changes("[CH2:1]1[CH2:2][O:3]1.[OH2:4]>>[OH:4][CH2:1][CH2:2][OH:3]");
        assert_eq!(c.rings_broken, RingEvents { count: 1, sizes: vec![3] });
        assert_eq!(c.rings_formed.count, 0);
        assert!(c.resulting_names().contains(&"alcohol".to_string()));
        assert_eq!(c.reacting_names(), vec!["epoxy"]);
    }

    #[test]
    fn ring_formation_outside_groups() {
        // Diels-Alder: butadiene + ethylene -> cyclohexene.
        let c = changes("[CH2:1]=[CH:2][CH:3]=[CH2:4].[CH2:5]=[CH2:6]>>[CH2:1]1[CH:2]=[CH:3][CH2:4][CH2:5][CH2:6]1");
        assert_eq!(c.rings_formed, RingEvents { count: 1, sizes: vec![6] });
        assert_eq!(c.rings_broken.count, 0);
    }

    #[test]
    fn json_keys() {
        let c = changes("[CH3:1][OH:2].[C:3](=[O:4])(O)[CH3:5]>>[CH3:1][O:2][C:3](=[O:4])[CH3:5]");
        let v = c.to_json();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        assert_eq!(
            keys,
            ["reacting_groups", "resulting_groups", "rings_broken", "rings_formed", "extra_bond_changes", "quality", "description"]
        );
        assert_eq!(v["quality"], "ok");
        assert_eq!(v["rings_broken"]["count"], 0);
    }
}
