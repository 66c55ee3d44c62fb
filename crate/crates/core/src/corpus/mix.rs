//! Per-source quotas for a weighted dataset blend.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CorpusError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixPlan {
    pub quotas: BTreeMap<String, u64>,
    pub seed: u64,
}

impl MixPlan {
    pub fn total(&self) -> u64 {
        self.quotas.values().sum()
    }
}

/// Largest blend with `quota / weight` equal across sources up to one
/// entry, no quota above its availability and, when given, no more than
/// `max_total` entries overall. Rounding slack is handed out in seeded
/// order.
pub fn plan_mix(
    available: &BTreeMap<String, u64>,
    ratio: &[(String, f64)],
    seed: u64,
    max_total: Option<u64>,
) -> Result<MixPlan, CorpusError> {
    if ratio.is_empty() {
        return Err(CorpusError::EmptyRatio);
    }
    for (name, w) in ratio {
        if !(w.is_finite() && *w > 0.0) {
            return Err(CorpusError::Weight { source_name: name.clone() });
        }
        if available.get(name).copied().unwrap_or(0) == 0 {
            return Err(CorpusError::Unavailable { source_name: name.clone() });
        }
    }
    let weight_sum: f64 = ratio.iter().map(|(_, w)| w).sum();
    let mut scale = ratio
        .iter()
        .map(|(name, w)| available[name] as f64 / w)
        .fold(f64::INFINITY, f64::min);
    if let Some(cap) = max_total {
        scale = scale.min(cap as f64 / weight_sum);
    }

    // The exact target `scale * w` may sit a hair off an integer; round
    // near-integers so the slack below is not spent on float noise.
    let exact: Vec<f64> = ratio
        .iter()
        .map(|(_, w)| {
            let x = scale * w;
            if (x - x.round()).abs() < 1e-9 {
                x.round()
            } else {
                x
            }
        })
        .collect();
    let mut quotas: Vec<u64> = exact.iter().map(|x| x.floor() as u64).collect();
    let mut bumpable: Vec<usize> = (0..ratio.len())
        .filter(|&i| exact[i].fract() > 0.0 && quotas[i] < available[&ratio[i].0])
        .collect();
    bumpable.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let floor_total: u64 = quotas.iter().sum();
    let room = max_total.map_or(u64::MAX, |cap| cap.saturating_sub(floor_total));
    for &i in bumpable.iter().take(room.min(bumpable.len() as u64) as usize) {
        quotas[i] += 1;
    }

    let mut plan = BTreeMap::new();
    for ((name, _), q) in ratio.iter().zip(quotas) {
        *plan.entry(name.clone()).or_insert(0) += q;
    }
    Ok(MixPlan { quotas: plan, seed })
}
