//! Hückel aromaticity over the localised (Kekulé) structure.
//!
//! Each ring atom donates a fixed number of π electrons: one for an atom
//! with a double bond inside the ring system, two for a lone-pair donor
//! (pyrrolic N, O, S, carbanion), zero for an exocyclic carbonyl carbon or
//! a carbocation. A ring is aromatic when every member donates and the sum
//! is 4n+2. Every simple cycle through donor atoms is tested, so fused
//! envelopes such as azulene's perimeter count and the result does not hinge
//! on which SSSR a bridged system happens to get.

use super::element::{self, aromatic_capable};
use super::{BondOrder, Molecule};

fn electrons(mol: &Molecule, atom: usize) -> Option<u32> {
    let a = &mol.atoms[atom];
    if !aromatic_capable(a.atomic_number) {
        return None;
    }
    let mut ring_double = 0;
    let mut exo_double: Option<usize> = None;
    for &(n, bi) in &mol.adjacency[atom] {
        let b = &mol.bonds[bi];
        match b.kekule {
            BondOrder::Triple => return None,
            BondOrder::Double if b.in_ring => ring_double += 1,
            BondOrder::Double => {
                if exo_double.is_some() {
                    return None;
                }
                exo_double = Some(n);
            }
            _ => {}
        }
    }
    match (ring_double, exo_double) {
        (1, None) => Some(1),
        (0, Some(partner)) => {
            let p = mol.atoms[partner].atomic_number;
            let electronegative = matches!(p, element::NITROGEN | element::OXYGEN | element::SULFUR);
            (a.atomic_number == element::CARBON && electronegative).then_some(0)
        }
        (0, None) => {
            let connections = mol.adjacency[atom].len() as u32 + mol.own_h(atom);
            match (a.atomic_number, a.charge) {
                (element::CARBON, -1) => Some(2),
                (element::CARBON, 1) => Some(0),
                (element::NITROGEN | element::PHOSPHORUS | element::ARSENIC, 0) if connections == 3 => Some(2),
                (element::NITROGEN | element::PHOSPHORUS, -1) if connections == 2 => Some(2),
                (element::OXYGEN | element::SULFUR | element::SELENIUM, 0) if connections == 2 => Some(2),
                (element::BORON, 0) if connections == 3 => Some(0),
                _ => None,
            }
        }
        _ => None,
    }
}

const MAX_CYCLE: usize = 20;
const MAX_CYCLES: usize = 50_000;

fn huckel(cycle: &[usize], donors: &[Option<u32>]) -> bool {
    let total: u32 = cycle.iter().map(|&a| donors[a].unwrap_or(0)).sum();
    total >= 2 && (total - 2).is_multiple_of(4)
}

/// Every simple cycle of the donor subgraph up to `MAX_CYCLE` atoms. The
/// result is a set, so it does not depend on atom numbering.
fn donor_cycles(mol: &Molecule, donors: &[Option<u32>]) -> Vec<Vec<usize>> {
    let n = mol.atoms.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            if donors[u].is_none() {
                return Vec::new();
            }
            let mut v: Vec<usize> = mol.adjacency[u]
                .iter()
                .filter(|&&(v, bi)| donors[v].is_some() && mol.bonds[bi].in_ring)
                .map(|&(v, _)| v)
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        if adj[start].len() < 2 {
            continue;
        }
        let mut path = vec![start];
        on_path[start] = true;
        extend(&adj, start, &mut path, &mut on_path, &mut cycles);
        on_path[start] = false;
        if cycles.len() >= MAX_CYCLES {
            break;
        }
    }
    cycles
}

fn extend(
    adj: &[Vec<usize>],
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    cycles: &mut Vec<Vec<usize>>,
) {
    let u = *path.last().unwrap();
    for &v in &adj[u] {
        if cycles.len() >= MAX_CYCLES {
            return;
        }
        if v == start && path.len() >= 3 {
            // Each cycle is seen in both directions; keep one.
            if path[1] < path[path.len() - 1] {
                cycles.push(path.clone());
            }
            continue;
        }
        if v <= start || on_path[v] || path.len() >= MAX_CYCLE {
            continue;
        }
        on_path[v] = true;
        path.push(v);
        extend(adj, start, path, on_path, cycles);
        path.pop();
        on_path[v] = false;
    }
}

/// Marks aromatic atoms and bonds in place.
pub(crate) fn perceive(mol: &mut Molecule) {
    if mol.rings.is_empty() {
        return;
    }
    let donors: Vec<Option<u32>> = (0..mol.atoms.len())
        .map(|i| if mol.atoms[i].in_ring { electrons(mol, i) } else { None })
        .collect();
    let cycles = donor_cycles(mol, &donors);
    let aromatic_cycle: Vec<bool> = cycles.iter().map(|c| huckel(c, &donors)).collect();

    let mut arom_atom = vec![false; mol.atoms.len()];
    for (c, &ok) in cycles.iter().zip(&aromatic_cycle) {
        if ok {
            c.iter().for_each(|&a| arom_atom[a] = true);
        }
    }
    for (i, a) in mol.atoms.iter_mut().enumerate() {
        a.aromatic = arom_atom[i];
    }
    // Bonds of Hückel cycles, and of any cycle made only of aromatic atoms.
    for (c, &ok) in cycles.iter().zip(&aromatic_cycle) {
        if !ok && !c.iter().all(|&a| arom_atom[a]) {
            continue;
        }
        for k in 0..c.len() {
            let (u, v) = (c[k], c[(k + 1) % c.len()]);
            if let Some(&(_, bi)) = mol.adjacency[u].iter().find(|(n, _)| *n == v) {
                mol.bonds[bi].order = BondOrder::Aromatic;
            }
        }
    }
}
