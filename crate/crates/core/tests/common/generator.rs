//! Random molecule generator for property suites.
//!
//! Builds a valence-respecting graph (chains, branches, ring closures,
//! Kekulé aromatic templates, a few charged centres) and writes it as
//! SMILES with an independent little emitter.

use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Copy)]
struct GenAtom {
    z: u8,
    charge: i8,
    max_valence: u32,
}

struct Graph {
    atoms: Vec<GenAtom>,
    bonds: Vec<(usize, usize, u32)>,
}

impl Graph {
    fn used(&self, a: usize) -> u32 {
        self.bonds
            .iter()
            .filter(|b| b.0 == a || b.1 == a)
            .map(|b| b.2)
            .sum()
    }

    fn free(&self, a: usize) -> u32 {
        self.atoms[a].max_valence.saturating_sub(self.used(a))
    }

    fn bonded(&self, a: usize, b: usize) -> bool {
        self.bonds
            .iter()
            .any(|x| (x.0 == a && x.1 == b) || (x.0 == b && x.1 == a))
    }

    fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.atoms.len()];
        dist[a] = 0;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &(x, y, _) in &self.bonds {
                let v = if x == u {
                    y
                } else if y == u {
                    x
                } else {
                    continue;
                };
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (dist[b] != usize::MAX).then_some(dist[b])
    }

    fn push(&mut self, z: u8, charge: i8, max_valence: u32) -> usize {
        self.atoms.push(GenAtom { z, charge, max_valence });
        self.atoms.len() - 1
    }
}

fn random_element(rng: &mut impl Rng) -> (u8, i8, u32) {
    let roll = rng.gen_range(0..100);
    match roll {
        0..=54 => (6, 0, 4),
        55..=67 => (7, 0, 3),
        68..=79 => (8, 0, 2),
        80..=84 => (16, 0, 2),
        85..=86 => (9, 0, 1),
        87..=88 => (17, 0, 1),
        89 => (35, 0, 1),
        90 => (53, 0, 1),
        91 => (15, 0, 3),
        92 => (5, 0, 3),
        93..=94 => (7, 1, 4),
        95..=96 => (8, -1, 1),
        97 => (16, 0, 6),
        98 => (6, -1, 3),
        _ => (14, 0, 4),
    }
}

/// Kekulé ring templates: (ring elements, charges, max valences, double-bond positions).
fn add_template(g: &mut Graph, rng: &mut impl Rng) -> usize {
    let kind = rng.gen_range(0..7);
    let (elems, doubles): (Vec<(u8, i8, u32)>, Vec<usize>) = match kind {
        0 => (vec![(6, 0, 4); 6], vec![0, 2, 4]),
        1 => {
            let mut e = vec![(6, 0, 4); 6];
            e[rng.gen_range(0..6)] = (7, 0, 3);
            (e, vec![0, 2, 4])
        }
        2 => (vec![(7, 0, 3), (6, 0, 4), (6, 0, 4), (6, 0, 4), (6, 0, 4)], vec![1, 3]),
        3 => (vec![(8, 0, 2), (6, 0, 4), (6, 0, 4), (6, 0, 4), (6, 0, 4)], vec![1, 3]),
        4 => (vec![(16, 0, 2), (6, 0, 4), (6, 0, 4), (6, 0, 4), (6, 0, 4)], vec![1, 3]),
        5 => (vec![(6, 0, 4); 6], vec![]),
        _ => (vec![(6, 0, 4), (6, 0, 4), (7, 0, 3), (6, 0, 4), (6, 0, 4), (8, 0, 2)], vec![0]),
    };
    let start = g.atoms.len();
    for &(z, c, v) in &elems {
        g.push(z, c, v);
    }
    let n = elems.len();
    for k in 0..n {
        let order = if doubles.contains(&k) { 2 } else { 1 };
        g.bonds.push((start + k, start + (k + 1) % n, order));
    }
    // Occasionally fuse a second six-ring onto a benzene template.
    if kind == 0 && rng.gen_bool(0.3) {
        let a = start;
        let b = start + 1;
        let extra: Vec<usize> = (0..4).map(|_| g.push(6, 0, 4)).collect();
        // Shared bond is the double bond 0-1; the new ring alternates around it.
        g.bonds.push((b, extra[0], 1));
        g.bonds.push((extra[0], extra[1], 2));
        g.bonds.push((extra[1], extra[2], 1));
        g.bonds.push((extra[2], extra[3], 2));
        g.bonds.push((extra[3], a, 1));
    }
    start + rng.gen_range(0..n)
}

fn attachable(g: &Graph, rng: &mut impl Rng, need: u32) -> Option<usize> {
    let candidates: Vec<usize> = (0..g.atoms.len()).filter(|&a| g.free(a) >= need).collect();
    candidates.choose(rng).copied()
}

fn build(rng: &mut impl Rng) -> Graph {
    let mut g = Graph { atoms: Vec::new(), bonds: Vec::new() };
    let fragments = if rng.gen_bool(0.1) { 2 } else { 1 };
    for _ in 0..fragments {
        let target = rng.gen_range(1..=18);
        let first = g.atoms.len();
        if rng.gen_bool(0.35) {
            add_template(&mut g, rng);
        } else {
            let (z, c, v) = random_element(rng);
            g.push(z, c, v);
        }
        let mut guard = 0;
        while g.atoms.len() - first < target && guard < 100 {
            guard += 1;
            let action = rng.gen_range(0..100);
            let in_frag = |a: usize| a >= first;
            if action < 12 && g.atoms.len() - first + 6 <= target + 4 {
                let Some(anchor) = attachable(&g, rng, 1).filter(|&a| in_frag(a)) else { continue };
                let t = add_template(&mut g, rng);
                if g.free(t) >= 1 {
                    g.bonds.push((anchor, t, 1));
                } else {
                    g.atoms.truncate(t.min(g.atoms.len()));
                    let n = g.atoms.len();
                    g.bonds.retain(|b| b.0 < n && b.1 < n);
                }
            } else if action < 22 {
                // ring closure
                let cands: Vec<usize> = (first..g.atoms.len()).filter(|&a| g.free(a) >= 1).collect();
                if cands.len() < 2 {
                    continue;
                }
                let a = *cands.choose(rng).unwrap();
                let b = *cands.choose(rng).unwrap();
                if a == b || g.bonded(a, b) {
                    continue;
                }
                match g.distance(a, b) {
                    Some(d) if (2..=6).contains(&d) => g.bonds.push((a.min(b), a.max(b), 1)),
                    _ => {}
                }
            } else {
                let Some(anchor) = attachable(&g, rng, 1).filter(|&a| in_frag(a)) else { break };
                let (z, c, v) = random_element(rng);
                let new = g.push(z, c, v);
                let max_order = g.free(anchor).min(v).min(3);
                let order = match rng.gen_range(0..10) {
                    0 if max_order >= 3 => 3,
                    1 | 2 if max_order >= 2 => 2,
                    _ => 1,
                };
                g.bonds.push((anchor, new, order));
            }
        }
    }
    g
}

/// Writes the graph with explicit bond symbols and no aromatic lowercase.
fn emit(g: &Graph, rng: &mut impl Rng) -> String {
    let n = g.atoms.len();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for &(a, b, o) in &g.bonds {
        adj[a].push((b, o));
        adj[b].push((a, o));
    }
    for l in adj.iter_mut() {
        l.shuffle(rng);
    }
    let mut visited = vec![false; n];
    let mut parts = Vec::new();
    let mut next_label = 1u32;
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // Spanning tree first, then ring closures.
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        let mut tree = vec![Vec::new(); n];
        while let Some(u) = stack.pop() {
            order.push(u);
            for &(v, o) in &adj[u] {
                if !visited[v] {
                    visited[v] = true;
                    parent[v] = u;
                    tree[u].push((v, o));
                    stack.push(v);
                }
            }
        }
        let mut closures: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for &(a, b, o) in &g.bonds {
            if !(order.contains(&a)) || parent[a] == b || parent[b] == a {
                continue;
            }
            let label = next_label;
            next_label += 1;
            closures[a].push((label, o));
            closures[b].push((label, o));
        }
        let mut s = String::new();
        write_atom(g, root, &tree, &closures, &mut s);
        parts.push(s);
    }
    parts.join(".")
}

fn bond(o: u32) -> &'static str {
    match o {
        2 => "=",
        3 => "#",
        _ => "",
    }
}

fn write_atom(g: &Graph, u: usize, tree: &[Vec<(usize, u32)>], closures: &[Vec<(u32, u32)>], s: &mut String) {
    let a = g.atoms[u];
    let sym = match a.z {
        5 => "B",
        6 => "C",
        7 => "N",
        8 => "O",
        9 => "F",
        14 => "Si",
        15 => "P",
        16 => "S",
        17 => "Cl",
        35 => "Br",
        53 => "I",
        _ => unreachable!(),
    };
    let used = g.used(u);
    if a.charge != 0 || a.z == 14 || (a.z == 16 && a.max_valence == 6) {
        let h = a.max_valence.saturating_sub(used);
        let charge = match a.charge {
            1 => "+",
            -1 => "-",
            _ => "",
        };
        let hs = match h {
            0 => String::new(),
            1 => "H".to_string(),
            k => format!("H{k}"),
        };
        s.push_str(&format!("[{sym}{hs}{charge}]"));
    } else {
        s.push_str(sym);
    }
    for &(label, o) in &closures[u] {
        s.push_str(bond(o));
        if label < 10 {
            s.push_str(&label.to_string());
        } else {
            s.push_str(&format!("%{label:02}"));
        }
    }
    let kids = &tree[u];
    for (k, &(v, o)) in kids.iter().enumerate() {
        let last = k + 1 == kids.len();
        if !last {
            s.push('(');
        }
        s.push_str(bond(o));
        write_atom(g, v, tree, closures, s);
        if !last {
            s.push(')');
        }
    }
}

/// A random valid SMILES string.
pub fn random_smiles(rng: &mut impl Rng) -> String {
    let g = build(rng);
    emit(&g, rng)
}
