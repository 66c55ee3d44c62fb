//! Localise lowercase (aromatic) input into alternating single/double bonds.

/// Chooses a set of edges forming a perfect matching on the atoms flagged in
/// `needs_pi`. `edges` holds `(atom, atom, bond index)` for every aromatic
/// bond. Returns the bond indices that become double, or the first atom
/// that can not be satisfied.
pub(crate) fn assign_double_bonds(
    n_atoms: usize,
    needs_pi: &[bool],
    edges: &[(usize, usize, usize)],
) -> Result<Vec<usize>, usize> {
    let mut options: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_atoms];
    for &(a, b, bi) in edges {
        if needs_pi[a] && needs_pi[b] {
            options[a].push((b, bi));
            options[b].push((a, bi));
        }
    }
    let mut partner: Vec<Option<usize>> = vec![None; n_atoms];
    let mut chosen = Vec::new();
    let pending: Vec<usize> = (0..n_atoms).filter(|&i| needs_pi[i]).collect();
    if search(&options, &mut partner, &mut chosen, &pending) {
        chosen.sort_unstable();
        Ok(chosen)
    } else {
        let culprit = pending
            .iter()
            .copied()
            .find(|&i| options[i].is_empty())
            .or_else(|| pending.first().copied())
            .unwrap_or(0);
        Err(culprit)
    }
}

fn search(
    options: &[Vec<(usize, usize)>],
    partner: &mut Vec<Option<usize>>,
    chosen: &mut Vec<usize>,
    pending: &[usize],
) -> bool {
    // Most constrained unmatched atom first.
    let mut best: Option<(usize, usize)> = None;
    for &a in pending {
        if partner[a].is_some() {
            continue;
        }
        let free = options[a].iter().filter(|(b, _)| partner[*b].is_none()).count();
        if free == 0 {
            return false;
        }
        if best.is_none_or(|(_, f)| free < f) {
            best = Some((a, free));
            if free == 1 {
                break;
            }
        }
    }
    let Some((atom, _)) = best else {
        return true;
    };
    for &(other, bi) in &options[atom] {
        if partner[other].is_some() {
            continue;
        }
        partner[atom] = Some(other);
        partner[other] = Some(atom);
        chosen.push(bi);
        if search(options, partner, chosen, pending) {
            return true;
        }
        chosen.pop();
        partner[atom] = None;
        partner[other] = None;
    }
    false
}
