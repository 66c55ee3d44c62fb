//! Molecular graphs parsed from SMILES.
//!
//! A [`Molecule`] is built once by [`parse_smiles`] and never mutated
//! afterwards: rings, aromaticity and hydrogen counts are perceived during
//! construction so every downstream consumer sees the same view.

mod aromatic;
mod canon;
pub mod element;
mod kekule;
mod parse;
mod rings;
mod write;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use canon::{canonical_ranks, write_canonical};
pub use parse::{parse_smiles, SmilesError};
pub use write::{enumerate_random, write_random, write_with_ranks};

/// Bond multiplicity as seen by matching and writing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BondOrder {
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondOrder {
    /// Integer contribution to valence; aromatic bonds are resolved through
    /// their Kekulé assignment instead.
    pub fn valence(self) -> u32 {
        match self {
            BondOrder::Single => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
            BondOrder::Aromatic => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BondOrder::Single => "-",
            BondOrder::Double => "=",
            BondOrder::Triple => "#",
            BondOrder::Aromatic => ":",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BondOrder::Single => "single",
            BondOrder::Double => "double",
            BondOrder::Triple => "triple",
            BondOrder::Aromatic => "aromatic",
        }
    }
}

impl fmt::Display for BondOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Directional single-bond marker, kept but never interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BondStereo {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub index: usize,
    pub atomic_number: u8,
    pub charge: i8,
    pub isotope: Option<u16>,
    pub aromatic: bool,
    /// Hydrogens written inside brackets.
    pub explicit_h: u8,
    /// Hydrogens implied by the valence model; zero for bracket atoms.
    pub implicit_h: u8,
    pub map_number: Option<u32>,
    pub in_ring: bool,
    pub bracket: bool,
    /// Tetrahedral marker as written (`@`, `@@`, ...).
    pub chirality: Option<String>,
}

impl Atom {
    pub fn symbol(&self) -> &'static str {
        element::symbol(self.atomic_number)
    }

    pub fn is_hydrogen(&self) -> bool {
        self.atomic_number == element::HYDROGEN
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bond {
    pub begin: usize,
    pub end: usize,
    pub order: BondOrder,
    /// Localised order; equals `order` except for aromatic bonds.
    pub kekule: BondOrder,
    pub in_ring: bool,
    pub stereo: Option<BondStereo>,
}

impl Bond {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.begin, self.end)
    }

    pub fn other(&self, atom: usize) -> usize {
        if self.begin == atom {
            self.end
        } else {
            self.begin
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Molecule {
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    rings: Vec<Vec<usize>>,
    adjacency: Vec<Vec<(usize, usize)>>,
    smallest_cycle: Vec<Option<usize>>,
    component: Vec<usize>,
    component_count: usize,
}

impl Molecule {
    /// Builds the derived tables (adjacency, components, SSSR, ring flags).
    /// Callers guarantee a simple graph with in-range endpoints.
    pub(crate) fn assemble(mut atoms: Vec<Atom>, mut bonds: Vec<Bond>) -> Molecule {
        let mut adjacency = vec![Vec::new(); atoms.len()];
        for (i, b) in bonds.iter().enumerate() {
            adjacency[b.begin].push((b.end, i));
            adjacency[b.end].push((b.begin, i));
        }
        let (component, component_count) = label_components(&adjacency);
        let rings = rings::sssr(atoms.len(), &bonds, &adjacency);
        for a in atoms.iter_mut() {
            a.in_ring = false;
        }
        for b in bonds.iter_mut() {
            b.in_ring = false;
        }
        for ring in &rings {
            for k in 0..ring.len() {
                let u = ring[k];
                let v = ring[(k + 1) % ring.len()];
                atoms[u].in_ring = true;
                if let Some(&(_, bi)) = adjacency[u].iter().find(|(n, _)| *n == v) {
                    bonds[bi].in_ring = true;
                }
            }
        }
        for (i, a) in atoms.iter_mut().enumerate() {
            a.index = i;
        }
        let smallest_cycle = (0..atoms.len())
            .map(|a| smallest_cycle_through(&adjacency, a))
            .collect();
        Molecule {
            atoms,
            bonds,
            rings,
            adjacency,
            smallest_cycle,
            component,
            component_count,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &Atom {
        &self.atoms[index]
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn bond(&self, index: usize) -> &Bond {
        &self.bonds[index]
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }

    pub fn heavy_atom_count(&self) -> usize {
        self.atoms.iter().filter(|a| !a.is_hydrogen()).count()
    }

    /// Neighbours as `(atom, bond)` index pairs.
    pub fn neighbors(&self, atom: usize) -> &[(usize, usize)] {
        &self.adjacency[atom]
    }

    pub fn bond_between(&self, a: usize, b: usize) -> Option<&Bond> {
        self.adjacency[a]
            .iter()
            .find(|(n, _)| *n == b)
            .map(|&(_, bi)| &self.bonds[bi])
    }

    /// Explicit connections, hydrogen atoms included.
    pub fn degree(&self, atom: usize) -> usize {
        self.adjacency[atom].len()
    }

    /// Attached hydrogens: written, implied, and explicit hydrogen atoms.
    pub fn total_h(&self, atom: usize) -> u32 {
        let a = &self.atoms[atom];
        let attached = self.adjacency[atom]
            .iter()
            .filter(|(n, _)| self.atoms[*n].is_hydrogen())
            .count() as u32;
        a.explicit_h as u32 + a.implicit_h as u32 + attached
    }

    /// Own hydrogens (bracket count plus implied), excluding H atoms in the graph.
    pub fn own_h(&self, atom: usize) -> u32 {
        let a = &self.atoms[atom];
        a.explicit_h as u32 + a.implicit_h as u32
    }

    /// Sum of localised bond orders plus own hydrogens.
    pub fn valence(&self, atom: usize) -> u32 {
        let bonds: u32 = self.adjacency[atom]
            .iter()
            .map(|&(_, bi)| self.bonds[bi].kekule.valence())
            .sum();
        bonds + self.own_h(atom)
    }

    /// Smallest set of smallest rings, each as an ordered atom cycle.
    pub fn ring_info(&self) -> &[Vec<usize>] {
        &self.rings
    }

    /// Number of SSSR rings that contain `atom`.
    pub fn ring_membership(&self, atom: usize) -> usize {
        self.rings.iter().filter(|r| r.contains(&atom)).count()
    }

    /// Size of the smallest cycle through `atom`. Unlike SSSR membership
    /// this does not depend on atom order when the SSSR is not unique.
    pub fn smallest_ring_size(&self, atom: usize) -> Option<usize> {
        self.smallest_cycle[atom]
    }

    pub fn component_of(&self, atom: usize) -> usize {
        self.component[atom]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Atom indices of each connected component, in first-appearance order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (i, &c) in self.component.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Copies the induced subgraph on `keep` (sorted), renumbering atoms.
    pub fn subgraph(&self, keep: &[usize]) -> Molecule {
        let mut remap = vec![usize::MAX; self.atoms.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let atoms = keep.iter().map(|&i| self.atoms[i].clone()).collect();
        let bonds = self
            .bonds
            .iter()
            .filter(|b| remap[b.begin] != usize::MAX && remap[b.end] != usize::MAX)
            .map(|b| Bond {
                begin: remap[b.begin],
                end: remap[b.end],
                ..b.clone()
            })
            .collect();
        Molecule::assemble(atoms, bonds)
    }

    /// One molecule per connected component.
    pub fn split_components(&self) -> Vec<Molecule> {
        if self.component_count <= 1 {
            return vec![self.clone()];
        }
        self.components().iter().map(|c| self.subgraph(c)).collect()
    }

    /// Copy with every atom-map number removed.
    pub fn without_maps(&self) -> Molecule {
        let mut m = self.clone();
        for a in m.atoms.iter_mut() {
            a.map_number = None;
        }
        m
    }

    /// Copy with map numbers replaced through `f` (returning `None` clears).
    pub fn relabel_maps(&self, f: impl Fn(u32) -> Option<u32>) -> Molecule {
        let mut m = self.clone();
        for a in m.atoms.iter_mut() {
            a.map_number = a.map_number.and_then(&f);
        }
        m
    }
}

/// SSSR of a bare graph given as undirected edges.
pub(crate) fn ring_basis(n_atoms: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let bonds: Vec<Bond> = edges
        .iter()
        .map(|&(begin, end)| Bond {
            begin,
            end,
            order: BondOrder::Single,
            kekule: BondOrder::Single,
            in_ring: false,
            stereo: None,
        })
        .collect();
    let mut adjacency = vec![Vec::new(); n_atoms];
    for (i, b) in bonds.iter().enumerate() {
        adjacency[b.begin].push((b.end, i));
        adjacency[b.end].push((b.begin, i));
    }
    rings::sssr(n_atoms, &bonds, &adjacency)
}

fn smallest_cycle_through(adjacency: &[Vec<(usize, usize)>], atom: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    let n = adjacency.len();
    let mut dist = vec![usize::MAX; n];
    for &(first, skip) in &adjacency[atom] {
        // Shortest path first -> atom avoiding the direct bond.
        dist.fill(usize::MAX);
        dist[first] = 0;
        let mut queue = std::collections::VecDeque::from([first]);
        'bfs: while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| dist[u] + 1 >= b) {
                break;
            }
            for &(v, bi) in &adjacency[u] {
                if bi == skip || dist[v] != usize::MAX {
                    continue;
                }
                dist[v] = dist[u] + 1;
                if v == atom {
                    let len = dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
    }
    best
}

fn label_components(adjacency: &[Vec<(usize, usize)>]) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; adjacency.len()];
    let mut count = 0;
    for start in 0..adjacency.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = count;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adjacency[u] {
                if label[v] == usize::MAX {
                    label[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

impl fmt::Display for Molecule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_canonical(self))
    }
}

impl std::str::FromStr for Molecule {
    type Err = SmilesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_smiles(s)
    }
}
