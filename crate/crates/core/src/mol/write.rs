//! SMILES writer driven by an atom priority order.
//!
//! The same depth-first renderer serves canonical output (priorities are
//! canonical ranks) and randomized output (priorities are a seeded
//! permutation).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::{self, default_valence, is_organic_subset};
use super::{BondOrder, Molecule};

/// Renders the component containing `root`, visiting neighbours in
/// ascending `priority`.
pub fn write_with_ranks(mol: &Molecule, root: usize, priority: &[usize], maps: bool) -> String {
    let n = mol.atom_count();
    let mut visited = vec![false; n];
    let mut bond_used = vec![false; mol.bond_count()];
    let mut children: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    // (partner, bond) per atom, split by role.
    let mut ring_open: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut ring_close: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];

    // Iterative DFS building the spanning tree and the ring closures.
    // Frames hold (atom, ordered neighbours, cursor).
    type Frame = (usize, Vec<(usize, usize)>, usize);
    let mut stack: Vec<Frame> = Vec::new();
    visited[root] = true;
    stack.push((root, sorted_neighbors(mol, root, priority), 0));
    while let Some(top) = stack.last_mut() {
        let (u, ref nbrs, ref mut cursor) = *top;
        if *cursor >= nbrs.len() {
            stack.pop();
            continue;
        }
        let (v, bi) = nbrs[*cursor];
        *cursor += 1;
        if bond_used[bi] {
            continue;
        }
        bond_used[bi] = true;
        if visited[v] {
            ring_open[v].push((u, bi));
            ring_close[u].push((v, bi));
        } else {
            visited[v] = true;
            children[u].push((v, bi));
            let next = sorted_neighbors(mol, v, priority);
            stack.push((v, next, 0));
        }
    }

    let mut out = String::new();
    let mut labels: Vec<bool> = Vec::new();
    let mut assigned: Vec<Option<usize>> = vec![None; mol.bond_count()];
    emit(
        mol,
        root,
        priority,
        maps,
        &children,
        &ring_open,
        &ring_close,
        &mut labels,
        &mut assigned,
        &mut out,
    );
    out
}

fn sorted_neighbors(mol: &Molecule, atom: usize, priority: &[usize]) -> Vec<(usize, usize)> {
    let mut v = mol.neighbors(atom).to_vec();
    v.sort_by_key(|&(n, _)| priority[n]);
    v
}

#[allow(clippy::too_many_arguments)]
fn emit(
    mol: &Molecule,
    root: usize,
    priority: &[usize],
    maps: bool,
    children: &[Vec<(usize, usize)>],
    ring_open: &[Vec<(usize, usize)>],
    ring_close: &[Vec<(usize, usize)>],
    labels: &mut Vec<bool>,
    assigned: &mut [Option<usize>],
    out: &mut String,
) {
    enum Step {
        Atom(usize),
        Text(&'static str),
        Bond(usize, usize, usize),
    }
    let mut work = vec![Step::Atom(root)];
    while let Some(step) = work.pop() {
        match step {
            Step::Text(t) => out.push_str(t),
            Step::Bond(a, b, bi) => out.push_str(bond_symbol(mol, a, b, bi)),
            Step::Atom(u) => {
                out.push_str(&atom_token(mol, u, maps));
                // Closures first, in the order their labels were handed out.
                let mut closing: Vec<(usize, usize)> = ring_close[u].clone();
                closing.sort_by_key(|&(_, bi)| assigned[bi]);
                for (_, bi) in closing {
                    let label = assigned[bi].expect("ring opened before it closes");
                    push_label(out, label);
                    labels[label] = false;
                }
                let mut opening = ring_open[u].clone();
                opening.sort_by_key(|&(p, _)| priority[p]);
                for (p, bi) in opening {
                    let label = match labels.iter().position(|used| !used) {
                        Some(l) => l,
                        None => {
                            labels.push(false);
                            labels.len() - 1
                        }
                    };
                    labels[label] = true;
                    assigned[bi] = Some(label);
                    out.push_str(bond_symbol(mol, u, p, bi));
                    push_label(out, label);
                }
                let kids = &children[u];
                // Pushed in reverse so the stack pops them in order.
                for (k, &(v, bi)) in kids.iter().enumerate().rev() {
                    let last = k + 1 == kids.len();
                    if !last {
                        work.push(Step::Text(")"));
                    }
                    work.push(Step::Atom(v));
                    work.push(Step::Bond(u, v, bi));
                    if !last {
                        work.push(Step::Text("("));
                    }
                }
            }
        }
    }
}

fn push_label(out: &mut String, label: usize) {
    let l = label + 1;
    if l < 10 {
        out.push(char::from(b'0' + l as u8));
    } else {
        out.push('%');
        out.push_str(&format!("{l:02}"));
    }
}

fn bond_symbol(mol: &Molecule, a: usize, b: usize, bi: usize) -> &'static str {
    let bond = mol.bond(bi);
    match bond.order {
        BondOrder::Single => {
            if mol.atom(a).aromatic && mol.atom(b).aromatic {
                "-"
            } else {
                ""
            }
        }
        BondOrder::Double => "=",
        BondOrder::Triple => "#",
        BondOrder::Aromatic => "",
    }
}

/// Hydrogen count a reader would infer for the unbracketed spelling.
fn implied_h(mol: &Molecule, atom: usize) -> Option<u32> {
    let a = mol.atom(atom);
    let sigma: u32 = mol
        .neighbors(atom)
        .iter()
        .map(|&(_, bi)| mol.bond(bi).order.valence())
        .sum();
    let v = default_valence(a.atomic_number, sigma)?;
    if a.aromatic {
        let has_pi = mol
            .neighbors(atom)
            .iter()
            .any(|&(_, bi)| mol.bond(bi).order == BondOrder::Aromatic && mol.bond(bi).kekule == BondOrder::Double);
        let predicts_pi = sigma < v;
        if has_pi != predicts_pi {
            return None;
        }
        Some(v - sigma - u32::from(predicts_pi))
    } else {
        Some(v - sigma)
    }
}

fn atom_token(mol: &Molecule, atom: usize, maps: bool) -> String {
    let a = mol.atom(atom);
    let sym = element::symbol(a.atomic_number);
    let shown = if a.aromatic { sym.to_ascii_lowercase() } else { sym.to_string() };
    let own_h = mol.own_h(atom);
    let map = if maps { a.map_number } else { None };
    let plain = is_organic_subset(a.atomic_number)
        && a.charge == 0
        && a.isotope.is_none()
        && map.is_none()
        && implied_h(mol, atom) == Some(own_h);
    if plain {
        return shown;
    }
    let mut t = String::from("[");
    if let Some(iso) = a.isotope {
        t.push_str(&iso.to_string());
    }
    t.push_str(&shown);
    match own_h {
        0 => {}
        1 => t.push('H'),
        h => t.push_str(&format!("H{h}")),
    }
    match a.charge {
        0 => {}
        1 => t.push('+'),
        -1 => t.push('-'),
        c if c > 0 => t.push_str(&format!("+{c}")),
        c => t.push_str(&format!("-{}", -c)),
    }
    if let Some(m) = map {
        t.push_str(&format!(":{m}"));
    }
    t.push(']');
    t
}

/// One randomized rendering: random root and neighbour order per component,
/// components kept in input order. Atom maps are written when present.
pub fn write_random(mol: &Molecule, rng: &mut impl Rng) -> String {
    let mut priority: Vec<usize> = (0..mol.atom_count()).collect();
    priority.shuffle(rng);
    mol.components()
        .iter()
        .map(|comp| {
            let root = comp[rng.gen_range(0..comp.len())];
            write_with_ranks(mol, root, &priority, true)
        })
        .collect::<Vec<_>>()
        .join(".")
}

/// Up to `count` distinct randomized renderings, reproducible per `seed`.
pub fn enumerate_random(mol: &Molecule, count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<String> = Vec::with_capacity(count);
    let attempts = count.max(1) * 20;
    for _ in 0..attempts {
        if out.len() >= count {
            break;
        }
        let s = write_random(mol, &mut rng);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}
