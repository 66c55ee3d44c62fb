//! Smallest set of smallest rings as a minimum cycle basis.
//!
//! Candidate cycles come from breadth-first shortest-path trees rooted at
//! every atom (Horton's construction). Candidates are sorted by length and
//! accepted greedily while they stay linearly independent over GF(2) in
//! edge space, which yields exactly `bonds - atoms + components` rings.

use std::collections::{HashSet, VecDeque};

use super::Bond;

#[derive(Clone, PartialEq, Eq, Hash)]
struct EdgeSet(Vec<u64>);

impl EdgeSet {
    fn new(bits: usize) -> Self {
        EdgeSet(vec![0; bits.div_ceil(64)])
    }

    fn flip(&mut self, bit: usize) {
        self.0[bit / 64] ^= 1 << (bit % 64);
    }

    fn get(&self, bit: usize) -> bool {
        self.0[bit / 64] >> (bit % 64) & 1 == 1
    }

    fn xor(&mut self, other: &EdgeSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

struct Candidate {
    atoms: Vec<usize>,
    edges: EdgeSet,
}

pub(crate) fn sssr(n_atoms: usize, bonds: &[Bond], adjacency: &[Vec<(usize, usize)>]) -> Vec<Vec<usize>> {
    let n_bonds = bonds.len();
    if n_bonds == 0 {
        return Vec::new();
    }
    let n_components = {
        let mut seen = vec![false; n_atoms];
        let mut c = 0;
        for s in 0..n_atoms {
            if seen[s] {
                continue;
            }
            c += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &(v, _) in &adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        c
    };
    let target = n_bonds + n_components - n_atoms;
    if target == 0 {
        return Vec::new();
    }

    let mut seen_sets: HashSet<EdgeSet> = HashSet::new();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut parent = vec![usize::MAX; n_atoms];
    let mut parent_bond = vec![usize::MAX; n_atoms];
    let mut depth = vec![usize::MAX; n_atoms];

    for root in 0..n_atoms {
        if adjacency[root].len() < 2 {
            continue;
        }
        parent.fill(usize::MAX);
        parent_bond.fill(usize::MAX);
        depth.fill(usize::MAX);
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, bi) in &adjacency[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    parent_bond[v] = bi;
                    queue.push_back(v);
                }
            }
        }
        for (bi, b) in bonds.iter().enumerate() {
            let (x, y) = (b.begin, b.end);
            if depth[x] == usize::MAX || parent_bond[x] == bi || parent_bond[y] == bi {
                continue;
            }
            // Walk both ends up to their lowest common ancestor.
            let mut left = vec![x];
            let mut right = vec![y];
            let mut edges = EdgeSet::new(n_bonds);
            edges.flip(bi);
            let (mut a, mut c) = (x, y);
            while depth[a] > depth[c] {
                edges.flip(parent_bond[a]);
                a = parent[a];
                left.push(a);
            }
            while depth[c] > depth[a] {
                edges.flip(parent_bond[c]);
                c = parent[c];
                right.push(c);
            }
            while a != c {
                edges.flip(parent_bond[a]);
                a = parent[a];
                left.push(a);
                edges.flip(parent_bond[c]);
                c = parent[c];
                right.push(c);
            }
            right.pop();
            right.reverse();
            left.extend(right);
            if seen_sets.insert(edges.clone()) {
                candidates.push(Candidate {
                    atoms: normalize(left),
                    edges,
                });
            }
        }
    }

    candidates.sort_by(|p, q| {
        p.atoms
            .len()
            .cmp(&q.atoms.len())
            .then_with(|| sorted(&p.atoms).cmp(&sorted(&q.atoms)))
            .then_with(|| p.atoms.cmp(&q.atoms))
    });

    // Gaussian elimination keyed by pivot bit.
    let mut basis: Vec<Option<EdgeSet>> = vec![None; n_bonds];
    let mut rings = Vec::with_capacity(target);
    for cand in candidates {
        let mut reduced = cand.edges.clone();
        while let Some(p) = reduced.lowest() {
            match &basis[p] {
                Some(row) => reduced.xor(row),
                None => break,
            }
        }
        if let Some(p) = reduced.lowest() {
            debug_assert!(reduced.get(p));
            basis[p] = Some(reduced);
            rings.push(cand.atoms);
            if rings.len() == target {
                break;
            }
        }
    }
    rings
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Rotate so the smallest atom leads, then pick the direction whose second
/// atom is smaller.
fn normalize(cycle: Vec<usize>) -> Vec<usize> {
    let n = cycle.len();
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap_or(0);
    let fwd: Vec<usize> = (0..n).map(|k| cycle[(start + k) % n]).collect();
    let bwd: Vec<usize> = (0..n).map(|k| cycle[(start + n - k) % n]).collect();
    if fwd <= bwd {
        fwd
    } else {
        bwd
    }
}
