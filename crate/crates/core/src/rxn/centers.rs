use std::collections::BTreeSet;

use super::{AtomRef, Reaction, RxnError, Side};
use crate::mol::{BondOrder, Molecule};

/// Mapped atoms whose bonding or hydrogen count changes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReactionCenters {
    pub maps: BTreeSet<u32>,
    pub reactant_atoms: BTreeSet<AtomRef>,
    pub product_atoms: BTreeSet<AtomRef>,
}

impl ReactionCenters {
    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn atoms(&self, side: Side) -> &BTreeSet<AtomRef> {
        match side {
            Side::Product => &self.product_atoms,
            _ => &self.reactant_atoms,
        }
    }
}

/// Neighbour entry: mapped partners by map number, unmapped ones by element.
type Incident = (Option<u32>, u8, BondOrder);

fn environment(mols: &[Molecule], at: AtomRef) -> (Vec<Incident>, u32) {
    let mol = &mols[at.molecule];
    let mut bonds: Vec<Incident> = mol
        .neighbors(at.atom)
        .iter()
        .map(|&(n, bi)| {
            let partner = mol.atom(n);
            match partner.map_number {
                Some(m) => (Some(m), 0, mol.bond(bi).order),
                None => (None, partner.atomic_number, mol.bond(bi).order),
            }
        })
        .collect();
    bonds.sort();
    (bonds, mol.total_h(at.atom))
}

pub fn reaction_centers(rxn: &Reaction) -> Result<ReactionCenters, RxnError> {
    let rmaps = rxn.map_index(Side::Reactant);
    let pmaps = rxn.map_index(Side::Product);
    if rmaps.is_empty() || pmaps.is_empty() {
        return Err(RxnError::Unannotated);
    }
    let mut centers = ReactionCenters::default();
    let all: BTreeSet<u32> = rmaps.keys().chain(pmaps.keys()).copied().collect();
    for m in all {
        let r = rmaps.get(&m).copied();
        let p = pmaps.get(&m).copied();
        let changed = match (r, p) {
            (Some(r), Some(p)) => environment(&rxn.reactants, r) != environment(&rxn.products, p),
            _ => true,
        };
        if changed {
            centers.maps.insert(m);
            if let Some(r) = r {
                centers.reactant_atoms.insert(r);
            }
            if let Some(p) = p {
                centers.product_atoms.insert(p);
            }
        }
    }
    Ok(centers)
}
