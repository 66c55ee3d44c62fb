//! Naive substructure enumeration used to cross-check the matcher.
//!
//! Nodes are assigned strictly in index order, every atom is tried for every
//! node, and primitives are recomputed from the raw atom and bond tables.

use chemfg::mol::{BondOrder, Molecule};
use chemfg::smarts::{AtomExpr, AtomPrimitive, BondExpr, BondPrimitive, Expr, Pattern};

fn eval<P>(e: &Expr<P>, f: &dyn Fn(&P) -> bool) -> bool {
    match e {
        Expr::Prim(p) => f(p),
        Expr::Not(x) => !eval(x, f),
        Expr::And(xs) => xs.iter().all(|x| eval(x, f)),
        Expr::Or(xs) => xs.iter().any(|x| eval(x, f)),
    }
}

fn incident(mol: &Molecule, atom: usize) -> Vec<usize> {
    (0..mol.bond_count())
        .filter(|&b| mol.bond(b).begin == atom || mol.bond(b).end == atom)
        .collect()
}

fn bond_valence(o: BondOrder) -> u32 {
    match o {
        BondOrder::Double => 2,
        BondOrder::Triple => 3,
        _ => 1,
    }
}

fn hydrogens(mol: &Molecule, atom: usize) -> u32 {
    let a = mol.atom(atom);
    let h_atoms = incident(mol, atom)
        .iter()
        .filter(|&&b| mol.atom(mol.bond(b).other(atom)).atomic_number == 1)
        .count() as u32;
    a.explicit_h as u32 + a.implicit_h as u32 + h_atoms
}

/// Length of the shortest cycle through `atom`, by trying every incident
/// bond as the closing edge.
fn smallest_cycle(mol: &Molecule, atom: usize) -> Option<usize> {
    let mut best = None;
    for b in incident(mol, atom) {
        let start = mol.bond(b).other(atom);
        let mut dist = vec![usize::MAX; mol.atom_count()];
        dist[start] = 0;
        let mut frontier = vec![start];
        while !frontier.is_empty() && dist[atom] == usize::MAX {
            let mut next = Vec::new();
            for u in frontier {
                for e in incident(mol, u) {
                    if e == b {
                        continue;
                    }
                    let v = mol.bond(e).other(u);
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        if dist[atom] != usize::MAX {
            let len = dist[atom] + 1;
            best = Some(best.map_or(len, |x: usize| x.min(len)));
        }
    }
    best
}

fn bond_in_cycle(mol: &Molecule, bond: usize) -> bool {
    let b = mol.bond(bond);
    smallest_cycle(mol, b.begin).is_some() && {
        // Endpoints stay connected once the bond is removed.
        let mut seen = vec![false; mol.atom_count()];
        let mut stack = vec![b.begin];
        seen[b.begin] = true;
        while let Some(u) = stack.pop() {
            for e in incident(mol, u) {
                if e == bond {
                    continue;
                }
                let v = mol.bond(e).other(u);
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen[b.end]
    }
}

pub fn atom_ok(mol: &Molecule, expr: &AtomExpr, atom: usize) -> bool {
    let a = mol.atom(atom);
    let degree = incident(mol, atom).len() as u32;
    let own_h = a.explicit_h as u32 + a.implicit_h as u32;
    eval(expr, &|p| match p {
        AtomPrimitive::Any => true,
        AtomPrimitive::Aromatic => a.aromatic,
        AtomPrimitive::Aliphatic => !a.aromatic,
        AtomPrimitive::Element { atomic_number, aromatic } => {
            a.atomic_number == *atomic_number && aromatic.is_none_or(|f| f == a.aromatic)
        }
        AtomPrimitive::Degree(n) => degree == *n,
        AtomPrimitive::TotalH(n) => hydrogens(mol, atom) == *n,
        AtomPrimitive::ImplicitH(n) => a.implicit_h as u32 == *n,
        AtomPrimitive::Connectivity(n) => degree + own_h == *n,
        AtomPrimitive::Valence(n) => {
            let s: u32 = incident(mol, atom).iter().map(|&b| bond_valence(mol.bond(b).kekule)).sum();
            s + own_h == *n
        }
        AtomPrimitive::Charge(c) => a.charge as i32 == *c,
        AtomPrimitive::RingCount(None) | AtomPrimitive::RingSize(None) => smallest_cycle(mol, atom).is_some(),
        AtomPrimitive::RingCount(Some(k)) => {
            mol.ring_info().iter().filter(|r| r.contains(&atom)).count() as u32 == *k
        }
        AtomPrimitive::RingSize(Some(0)) => smallest_cycle(mol, atom).is_none(),
        AtomPrimitive::RingSize(Some(k)) => smallest_cycle(mol, atom) == Some(*k as usize),
        AtomPrimitive::Recursive(inner) => !embeddings(inner, mol, Some(atom), true).is_empty(),
    })
}

pub fn bond_ok(mol: &Molecule, expr: &BondExpr, bond: usize) -> bool {
    let b = mol.bond(bond);
    eval(expr, &|p| match p {
        BondPrimitive::Single => b.order == BondOrder::Single,
        BondPrimitive::Double => b.order == BondOrder::Double,
        BondPrimitive::Triple => b.order == BondOrder::Triple,
        BondPrimitive::Aromatic => b.order == BondOrder::Aromatic,
        BondPrimitive::Any => true,
        BondPrimitive::Ring => bond_in_cycle(mol, bond),
    })
}

fn find_bond(mol: &Molecule, a: usize, b: usize) -> Option<usize> {
    (0..mol.bond_count()).find(|&i| {
        let x = mol.bond(i);
        (x.begin == a && x.end == b) || (x.begin == b && x.end == a)
    })
}

fn assign(pattern: &Pattern, mol: &Molecule, root: Option<usize>, first_only: bool, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if first_only && !out.is_empty() {
        return;
    }
    let k = map.len();
    if k == pattern.nodes.len() {
        out.push(map.clone());
        return;
    }
    for atom in 0..mol.atom_count() {
        if map.contains(&atom) || (k == 0 && root.is_some_and(|r| r != atom)) {
            continue;
        }
        if !atom_ok(mol, &pattern.nodes[k], atom) {
            continue;
        }
        let edges_ok = pattern.edges.iter().all(|e| {
            let (u, v) = (e.begin, e.end);
            let other = if u == k && v < k {
                v
            } else if v == k && u < k {
                u
            } else {
                return true;
            };
            match find_bond(mol, atom, map[other]) {
                Some(b) => bond_ok(mol, &e.expr, b),
                None => false,
            }
        });
        if !edges_ok {
            continue;
        }
        map.push(atom);
        assign(pattern, mol, root, first_only, map, out);
        map.pop();
    }
}

/// Every injective embedding (not deduplicated).
pub fn embeddings(pattern: &Pattern, mol: &Molecule, root: Option<usize>, first_only: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    assign(pattern, mol, root, first_only, &mut Vec::new(), &mut out);
    out
}

/// Distinct matched atom sets, sorted.
pub fn atom_sets(pattern: &Pattern, mol: &Molecule) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = embeddings(pattern, mol, None, false)
        .into_iter()
        .map(|mut m| {
            m.sort_unstable();
            m
        })
        .collect();
    sets.sort();
    sets.dedup();
    sets
}
