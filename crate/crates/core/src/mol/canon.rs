//! Canonical atom ranking and canonical SMILES.
//!
//! Atoms start from an invariant tuple and are refined Morgan-style: each
//! round re-sorts atoms by (own class, sorted neighbour classes and bond
//! orders) until the partition stops splitting. Remaining ties are broken
//! by individualising each member of the first tied class in turn and
//! keeping the lexicographically smallest SMILES. The search visits at most
//! [`LEAF_BUDGET`] complete labellings per component; past that, only the
//! first member of each tied class is tried, which is exact whenever the
//! tied atoms are symmetry equivalent.

use super::write::write_with_ranks;
use super::Molecule;

const LEAF_BUDGET: usize = 128;

type Key = (u32, Vec<(u32, u8)>);

fn bond_code(mol: &Molecule, bi: usize) -> u8 {
    mol.bond(bi).order as u8
}

fn initial_classes(mol: &Molecule, comp: &[usize]) -> Vec<u32> {
    let keys: Vec<[i64; 8]> = comp
        .iter()
        .map(|&a| {
            let atom = mol.atom(a);
            [
                atom.atomic_number as i64,
                atom.isotope.map_or(0, |i| i as i64),
                atom.charge as i64,
                mol.degree(a) as i64,
                mol.total_h(a) as i64,
                atom.aromatic as i64,
                atom.in_ring as i64,
                mol.smallest_ring_size(a).unwrap_or(0) as i64,
            ]
        })
        .collect();
    dense_ranks(&keys)
}

fn dense_ranks<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn class_count(classes: &[u32]) -> usize {
    classes.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// `local` maps molecule atom index to position in `comp`.
fn refine(mol: &Molecule, comp: &[usize], local: &[usize], mut classes: Vec<u32>) -> Vec<u32> {
    let mut count = class_count(&classes);
    loop {
        let keys: Vec<Key> = comp
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut nb: Vec<(u32, u8)> = mol
                    .neighbors(a)
                    .iter()
                    .map(|&(n, bi)| (classes[local[n]], bond_code(mol, bi)))
                    .collect();
                nb.sort_unstable();
                (classes[i], nb)
            })
            .collect();
        let next = dense_ranks(&keys);
        let next_count = class_count(&next);
        classes = next;
        if next_count == count || next_count == comp.len() {
            return classes;
        }
        count = next_count;
    }
}

fn render(mol: &Molecule, comp: &[usize], classes: &[u32]) -> String {
    let mut priority = vec![usize::MAX; mol.atom_count()];
    for (i, &a) in comp.iter().enumerate() {
        priority[a] = classes[i] as usize;
    }
    let root = comp[classes.iter().position(|&c| c == 0).unwrap()];
    write_with_ranks(mol, root, &priority, false)
}

struct Search<'a> {
    mol: &'a Molecule,
    comp: &'a [usize],
    local: &'a [usize],
    leaves: usize,
    best: Option<(String, Vec<u32>)>,
}

impl Search<'_> {
    fn run(&mut self, classes: Vec<u32>) {
        let n = self.comp.len();
        if class_count(&classes) == n {
            self.leaves += 1;
            let s = render(self.mol, self.comp, &classes);
            if self.best.as_ref().is_none_or(|(b, _)| s < *b) {
                self.best = Some((s, classes));
            }
            return;
        }
        let mut sizes = vec![0usize; n];
        for &c in &classes {
            sizes[c as usize] += 1;
        }
        let tied = (0..n).find(|&c| sizes[c] > 1).unwrap() as u32;
        let members: Vec<usize> = (0..n).filter(|&i| classes[i] == tied).collect();
        for (k, &m) in members.iter().enumerate() {
            if k > 0 && self.leaves >= LEAF_BUDGET {
                break;
            }
            let split: Vec<u32> = classes
                .iter()
                .enumerate()
                .map(|(i, &c)| 2 * c + u32::from(c == tied && i != m))
                .collect();
            let split = dense_ranks(&split);
            let refined = refine(self.mol, self.comp, self.local, split);
            self.run(refined);
        }
    }
}

/// Canonical SMILES and ranks of one connected component.
fn canonical_component(mol: &Molecule, comp: &[usize]) -> (String, Vec<u32>) {
    if comp.len() == 1 {
        return (render(mol, comp, &[0]), vec![0]);
    }
    let mut local = vec![usize::MAX; mol.atom_count()];
    for (i, &a) in comp.iter().enumerate() {
        local[a] = i;
    }
    let classes = refine(mol, comp, &local, initial_classes(mol, comp));
    let mut search = Search {
        mol,
        comp,
        local: &local,
        leaves: 0,
        best: None,
    };
    search.run(classes);
    search.best.expect("search reaches at least one leaf")
}

/// Canonical SMILES; atom maps and stereo markers are not part of the output.
pub fn write_canonical(mol: &Molecule) -> String {
    let mut parts: Vec<String> = mol
        .components()
        .iter()
        .map(|c| canonical_component(mol, c).0)
        .collect();
    parts.sort();
    parts.join(".")
}

/// Canonical output position of every atom: atoms are numbered component by
/// component in the order the components appear in [`write_canonical`].
pub fn canonical_ranks(mol: &Molecule) -> Vec<usize> {
    let mut comps: Vec<(String, Vec<usize>, Vec<u32>)> = mol
        .components()
        .into_iter()
        .map(|c| {
            let (s, r) = canonical_component(mol, &c);
            (s, c, r)
        })
        .collect();
    comps.sort_by(|a, b| a.0.cmp(&b.0));
    let mut ranks = vec![0; mol.atom_count()];
    let mut offset = 0;
    for (_, comp, r) in comps {
        for (i, &a) in comp.iter().enumerate() {
            ranks[a] = offset + r[i] as usize;
        }
        offset += comp.len();
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mol::parse_smiles;

    fn canon(s: &str) -> String {
        write_canonical(&parse_smiles(s).unwrap())
    }

    #[test]
    fn orderings_agree() {
        assert_eq!(canon("OCC"), canon("CCO"));
        assert_eq!(canon("CCO"), "CCO");
        assert_eq!(canon("C1=CC=CC=C1"), canon("c1ccccc1"));
        assert_eq!(canon("[CH3:5]O"), canon("CO"));
        assert_eq!(canon("Cl.CCO"), canon("OCC.Cl"));
    }

    #[test]
    fn stereo_is_ignored() {
        assert_eq!(canon("F/C=C/F"), canon("FC=CF"));
        assert_eq!(canon("N[C@@H](C)C(=O)O"), canon("N[C@H](C)C(=O)O"));
    }

    #[test]
    fn distinct_molecules_differ() {
        assert_ne!(canon("CCO"), canon("COC"));
        assert_ne!(canon("c1ccccc1"), canon("C1CCCCC1"));
        assert_ne!(canon("C1CC1C1CC1"), canon("C1CCCCC1"));
    }
}
