use super::changes::{ChangeSet, RingEvents};

fn join_names(names: &[String]) -> String {
    match names {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {}", init.join(", "), last),
    }
}

fn unique(mut names: Vec<String>) -> Vec<String> {
    names.dedup();
    names
}

fn ring_clause(events: &RingEvents, verb: &str) -> Option<String> {
    if events.count == 0 {
        return None;
    }
    let sizes: Vec<String> = events.sizes.iter().map(|s| s.to_string()).collect();
    let (noun, label) = if events.count == 1 { ("ring", "size") } else { ("rings", "sizes") };
    Some(format!("{} {noun} {verb} ({label} {})", events.count, sizes.join(", ")))
}

/// One-sentence English summary of a change set.
pub fn describe(change: &ChangeSet) -> String {
    if change.is_empty() {
        return "No functional-group change detected.".to_string();
    }
    let reacting = unique(change.reacting_names());
    let resulting = unique(change.resulting_names());
    let mut text = match (reacting.is_empty(), resulting.is_empty()) {
        (false, false) => format!("Reaction between {} forming {}", join_names(&reacting), join_names(&resulting)),
        (false, true) => format!("Reaction between {} forming no new functional group", join_names(&reacting)),
        (true, false) => format!("Reaction forming {}", join_names(&resulting)),
        (true, true) => "Reaction with no functional-group change".to_string(),
    };
    let clauses = [
        ring_clause(&change.rings_broken, "broken"),
        ring_clause(&change.rings_formed, "formed"),
        match change.extra_bond_changes.len() {
            0 => None,
            1 => Some("1 other bond change".to_string()),
            n => Some(format!("{n} other bond changes")),
        },
    ];
    for clause in clauses.into_iter().flatten() {
        text.push_str("; ");
        text.push_str(&clause);
    }
    text.push('.');
    text
}
