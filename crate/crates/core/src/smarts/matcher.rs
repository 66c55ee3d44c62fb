//! Backtracking subgraph isomorphism.
//!
//! Pattern nodes are visited rarest-first: the node with the fewest
//! candidate atoms starts, then each step takes the connected node with the
//! fewest candidates, so most branches are cut after a neighbour lookup.

use std::collections::{HashMap, HashSet};
use std::marker::PhantomData;

use super::{AtomExpr, AtomPrimitive, BondExpr, BondPrimitive, Pattern};
use crate::mol::{BondOrder, Molecule};

/// One embedding: `mapping[node]` is the molecule atom for that pattern node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub mapping: Vec<usize>,
}

impl MatchResult {
    /// Matched atoms in ascending order.
    pub fn atoms(&self) -> Vec<usize> {
        let mut a = self.mapping.clone();
        a.sort_unstable();
        a
    }
}

/// Matching context for one molecule. Recursive-pattern results are cached
/// for the lifetime of the matcher, which borrows every pattern it sees.
pub struct Matcher<'a> {
    mol: &'a Molecule,
    memo: HashMap<(usize, usize), bool>,
    _patterns: PhantomData<&'a Pattern>,
}

struct Plan {
    order: Vec<usize>,
    /// For each step: an already placed neighbour node to extend from.
    anchor: Vec<Option<usize>>,
    /// For each step: (earlier node, edge index) pairs to verify.
    checks: Vec<Vec<(usize, usize)>>,
}

impl<'a> Matcher<'a> {
    pub fn new(mol: &'a Molecule) -> Self {
        Matcher {
            mol,
            memo: HashMap::new(),
            _patterns: PhantomData,
        }
    }

    pub fn molecule(&self) -> &'a Molecule {
        self.mol
    }

    /// Every embedding, one per distinct atom set, ordered by sorted atoms.
    pub fn match_all(&mut self, pattern: &'a Pattern) -> Vec<MatchResult> {
        self.search(pattern, None, usize::MAX)
    }

    pub fn has_match(&mut self, pattern: &'a Pattern) -> bool {
        !self.search(pattern, None, 1).is_empty()
    }

    pub fn atom_matches(&mut self, expr: &'a AtomExpr, atom: usize) -> bool {
        expr.eval(&mut |p| self.primitive(p, atom))
    }

    fn primitive(&mut self, p: &'a AtomPrimitive, atom: usize) -> bool {
        let mol = self.mol;
        let a = mol.atom(atom);
        match p {
            AtomPrimitive::Any => true,
            AtomPrimitive::Aromatic => a.aromatic,
            AtomPrimitive::Aliphatic => !a.aromatic,
            AtomPrimitive::Element { atomic_number, aromatic } => {
                a.atomic_number == *atomic_number && aromatic.is_none_or(|f| f == a.aromatic)
            }
            AtomPrimitive::Degree(n) => mol.degree(atom) as u32 == *n,
            AtomPrimitive::TotalH(n) => mol.total_h(atom) == *n,
            AtomPrimitive::ImplicitH(n) => a.implicit_h as u32 == *n,
            AtomPrimitive::Connectivity(n) => mol.degree(atom) as u32 + mol.own_h(atom) == *n,
            AtomPrimitive::Valence(n) => mol.valence(atom) == *n,
            AtomPrimitive::Charge(c) => a.charge as i32 == *c,
            AtomPrimitive::RingCount(None) | AtomPrimitive::RingSize(None) => a.in_ring,
            AtomPrimitive::RingCount(Some(k)) => mol.ring_membership(atom) as u32 == *k,
            AtomPrimitive::RingSize(Some(0)) => !a.in_ring,
            AtomPrimitive::RingSize(Some(k)) => mol.smallest_ring_size(atom) == Some(*k as usize),
            AtomPrimitive::Recursive(inner) => {
                let key = (inner.as_ref() as *const Pattern as usize, atom);
                if let Some(&hit) = self.memo.get(&key) {
                    return hit;
                }
                let hit = !self.search(inner, Some(atom), 1).is_empty();
                self.memo.insert(key, hit);
                hit
            }
        }
    }

    fn bond_matches(&self, expr: &BondExpr, bond: usize) -> bool {
        let b = self.mol.bond(bond);
        expr.eval(&mut |p| match p {
            BondPrimitive::Single => b.order == BondOrder::Single,
            BondPrimitive::Double => b.order == BondOrder::Double,
            BondPrimitive::Triple => b.order == BondOrder::Triple,
            BondPrimitive::Aromatic => b.order == BondOrder::Aromatic,
            BondPrimitive::Any => true,
            BondPrimitive::Ring => b.in_ring,
        })
    }

    fn plan(pattern: &Pattern, counts: &[usize]) -> Plan {
        let n = pattern.nodes.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        let mut checks = Vec::with_capacity(n);
        for _ in 0..n {
            let connected = |u: usize| pattern.neighbors(u).any(|(v, _)| placed[v]);
            let frontier = (0..n).filter(|&u| !placed[u] && connected(u)).min_by_key(|&u| (counts[u], u));
            let next = frontier
                .or_else(|| (0..n).filter(|&u| !placed[u]).min_by_key(|&u| (counts[u], u)))
                .unwrap();
            let mut back = Vec::new();
            for (k, e) in pattern.edges.iter().enumerate() {
                if e.begin == next && placed[e.end] {
                    back.push((e.end, k));
                } else if e.end == next && placed[e.begin] {
                    back.push((e.begin, k));
                }
            }
            anchor.push(back.first().map(|&(v, _)| v));
            checks.push(back);
            placed[next] = true;
            order.push(next);
        }
        Plan { order, anchor, checks }
    }

    /// Embeddings with node 0 optionally pinned to `root`; stops after
    /// `limit` distinct atom sets.
    fn search(&mut self, pattern: &'a Pattern, root: Option<usize>, limit: usize) -> Vec<MatchResult> {
        let n_atoms = self.mol.atom_count();
        let n = pattern.nodes.len();
        if n > n_atoms {
            return Vec::new();
        }
        let mut allowed = vec![vec![false; n_atoms]; n];
        let mut counts = vec![0usize; n];
        for node in 0..n {
            let range: Vec<usize> = match (node, root) {
                (0, Some(r)) => vec![r],
                _ => (0..n_atoms).collect(),
            };
            for atom in range {
                if self.atom_matches(&pattern.nodes[node], atom) {
                    allowed[node][atom] = true;
                    counts[node] += 1;
                }
            }
            if counts[node] == 0 {
                return Vec::new();
            }
        }
        let plan = Self::plan(pattern, &counts);
        let mut state = State {
            mapping: vec![usize::MAX; n],
            used: vec![false; n_atoms],
            seen: HashSet::new(),
            found: Vec::new(),
            limit,
        };
        self.extend(pattern, &plan, &allowed, 0, &mut state);
        let mut found = state.found;
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found.into_iter().map(|(_, mapping)| MatchResult { mapping }).collect()
    }

    fn extend(&self, pattern: &Pattern, plan: &Plan, allowed: &[Vec<bool>], step: usize, st: &mut State) {
        if st.found.len() >= st.limit {
            return;
        }
        if step == plan.order.len() {
            let mut key = st.mapping.clone();
            key.sort_unstable();
            if st.seen.insert(key.clone()) {
                st.found.push((key, st.mapping.clone()));
            }
            return;
        }
        let node = plan.order[step];
        let candidates: Vec<usize> = match plan.anchor[step] {
            Some(a) => self.mol.neighbors(st.mapping[a]).iter().map(|&(v, _)| v).collect(),
            None => (0..self.mol.atom_count()).collect(),
        };
        for atom in candidates {
            if st.used[atom] || !allowed[node][atom] {
                continue;
            }
            let bonds_ok = plan.checks[step].iter().all(|&(other, edge)| {
                match self.mol.neighbors(atom).iter().find(|(v, _)| *v == st.mapping[other]) {
                    Some(&(_, bi)) => self.bond_matches(&pattern.edges[edge].expr, bi),
                    None => false,
                }
            });
            if !bonds_ok {
                continue;
            }
            st.mapping[node] = atom;
            st.used[atom] = true;
            self.extend(pattern, plan, allowed, step + 1, st);
            st.used[atom] = false;
            st.mapping[node] = usize::MAX;
            if st.found.len() >= st.limit {
                return;
            }
        }
    }
}

struct State {
    mapping: Vec<usize>,
    used: Vec<bool>,
    seen: HashSet<Vec<usize>>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
    limit: usize,
}

/// All embeddings of `pattern` in `mol`, one per distinct atom set.
pub fn match_all(pattern: &Pattern, mol: &Molecule) -> Vec<MatchResult> {
    Matcher::new(mol).match_all(pattern)
}

/// Whether `pattern` occurs in `mol`; stops at the first embedding.
pub fn has_match(pattern: &Pattern, mol: &Molecule) -> bool {
    Matcher::new(mol).has_match(pattern)
}
