//! Rewards for reasoning-formatted answers: a format check and a
//! canonicalization-aware accuracy check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mol::{parse_smiles, write_canonical};

#[derive(Debug, Error)]
pub enum RewardError {
    #[error("unknown task kind {0:?}")]
    TaskKind(String),
    #[error("bad reward configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    Smiles,
    Choice,
    ExactText,
}

impl FromStr for TaskKind {
    type Err = RewardError;
    fn from_str(s: &str) -> Result<TaskKind, RewardError> {
        match s {
            "smiles" => Ok(TaskKind::Smiles),
            "choice" => Ok(TaskKind::Choice),
            "exact_text" => Ok(TaskKind::ExactText),
            other => Err(RewardError::TaskKind(other.to_string())),
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaskKind::Smiles => "smiles",
            TaskKind::Choice => "choice",
            TaskKind::ExactText => "exact_text",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Weights {
    pub format: f64,
    pub accuracy: f64,
}

impl Default for Weights {
    fn default() -> Weights {
        Weights { format: 1.0, accuracy: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RewardConfig {
    pub think_open: String,
    pub think_close: String,
    pub answer_open: String,
    pub answer_close: String,
    pub weights: Weights,
}

impl Default for RewardConfig {
    fn default() -> RewardConfig {
        RewardConfig {
            think_open: "<think>".into(),
            think_close: "</think>".into(),
            answer_open: "<answer>".into(),
            answer_close: "</answer>".into(),
            weights: Weights::default(),
        }
    }
}

impl RewardConfig {
    pub fn from_json(text: &str) -> Result<RewardConfig, RewardError> {
        let cfg: RewardConfig = serde_json::from_str(text).map_err(|e| RewardError::Config(e.to_string()))?;
        let tags = [&cfg.think_open, &cfg.think_close, &cfg.answer_open, &cfg.answer_close];
        if tags.iter().any(|t| t.is_empty()) {
            return Err(RewardError::Config("tags must be non-empty".into()));
        }
        let w = cfg.weights;
        if !(w.format.is_finite() && w.accuracy.is_finite() && w.format >= 0.0 && w.accuracy >= 0.0) {
            return Err(RewardError::Config("weights must be finite and non-negative".into()));
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewardResult {
    pub format_score: f64,
    pub accuracy_score: f64,
    pub total: f64,
    pub diagnostics: Vec<String>,
}

/// The answer block of a well-formed response: one reasoning block, then
/// one answer block, separated and followed only by whitespace.
pub fn extract_answer<'r>(response: &'r str, cfg: &RewardConfig) -> Result<&'r str, String> {
    let text = response.trim();
    for tag in [&cfg.think_open, &cfg.think_close, &cfg.answer_open, &cfg.answer_close] {
        let n = text.matches(tag.as_str()).count();
        if n != 1 {
            return Err(format!("expected one {tag}, found {n}"));
        }
    }
    let rest = text
        .strip_prefix(cfg.think_open.as_str())
        .ok_or_else(|| format!("response must start with {}", cfg.think_open))?;
    let (_, rest) = rest
        .split_once(cfg.think_close.as_str())
        .ok_or_else(|| format!("{} before {}", cfg.answer_open, cfg.think_close))?;
    let rest = rest
        .trim_start()
        .strip_prefix(cfg.answer_open.as_str())
        .ok_or_else(|| format!("text between {} and {}", cfg.think_close, cfg.answer_open))?;
    let (answer, tail) = rest
        .split_once(cfg.answer_close.as_str())
        .ok_or_else(|| format!("{} not closed", cfg.answer_open))?;
    if !tail.trim().is_empty() {
        return Err(format!("text after {}", cfg.answer_close));
    }
    let answer = answer.trim();
    if answer.is_empty() {
        return Err("empty answer".into());
    }
    Ok(answer)
}

pub fn format_reward(response: &str, cfg: &RewardConfig) -> f64 {
    if extract_answer(response, cfg).is_ok() {
        1.0
    } else {
        0.0
    }
}

fn canonical(smiles: &str) -> Result<String, String> {
    parse_smiles(smiles.trim()).map(|m| write_canonical(&m)).map_err(|e| e.to_string())
}

fn choice_letter(s: &str) -> String {
    s.trim()
        .trim_end_matches('.')
        .trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'))
        .trim()
        .to_lowercase()
}

/// Score and diagnostics for one answer against its gold value.
pub fn score_answer(answer: &str, gold: &str, kind: TaskKind) -> (f64, Vec<String>) {
    let mut diagnostics = Vec::new();
    let hit = match kind {
        // Components are canonicalized together, so `write_canonical` sorts
        // them and the comparison is over multisets.
        TaskKind::Smiles => match (canonical(answer), canonical(gold)) {
            (Ok(a), Ok(g)) => a == g,
            (a, g) => {
                if let Err(e) = a {
                    diagnostics.push(format!("answer does not parse: {e}"));
                }
                if let Err(e) = g {
                    diagnostics.push(format!("gold does not parse: {e}"));
                }
                false
            }
        },
        TaskKind::Choice => {
            let g = choice_letter(gold);
            !g.is_empty() && choice_letter(answer) == g
        }
        TaskKind::ExactText => {
            let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
            norm(answer) == norm(gold)
        }
    };
    (if hit { 1.0 } else { 0.0 }, diagnostics)
}

pub fn accuracy_reward(answer: &str, gold: &str, kind: TaskKind) -> f64 {
    score_answer(answer, gold, kind).0
}

pub fn combined_reward(response: &str, gold: &str, kind: TaskKind, cfg: &RewardConfig) -> RewardResult {
    let (format_score, accuracy_score, diagnostics) = match extract_answer(response, cfg) {
        Ok(answer) => {
            let (score, diagnostics) = score_answer(answer, gold, kind);
            (1.0, score, diagnostics)
        }
        Err(why) => (0.0, 0.0, vec![format!("format: {why}")]),
    };
    RewardResult {
        format_score,
        accuracy_score,
        total: cfg.weights.format * format_score + cfg.weights.accuracy * accuracy_score,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RewardConfig {
        RewardConfig::default()
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_reward("<think>x</think><answer>CCO</answer>", &cfg()), 1.0);
        assert_eq!(format_reward("<answer>CCO</answer>", &cfg()), 0.0);
        assert_eq!(format_reward("<think>a</think><answer>CCO</answer>trailing", &cfg()), 0.0);
        assert_eq!(format_reward("<think>a</think><answer> </answer>", &cfg()), 0.0);
    }

    #[test]
    fn smiles_accuracy() {
        assert_eq!(accuracy_reward("OCC", "CCO", TaskKind::Smiles), 1.0);
        assert_eq!(accuracy_reward("C(C)O.Cl", "Cl.CCO", TaskKind::Smiles), 1.0);
        assert_eq!(accuracy_reward("CCO.CCO", "CCO", TaskKind::Smiles), 0.0);
        let (score, diag) = score_answer("not-a-smiles", "CCO", TaskKind::Smiles);
        assert_eq!(score, 0.0);
        assert!(diag[0].starts_with("answer does not parse"));
    }

    #[test]
    fn choice_and_text() {
        assert_eq!(accuracy_reward("b", "B", TaskKind::Choice), 1.0);
        assert_eq!(accuracy_reward("(C).", "c", TaskKind::Choice), 1.0);
        assert_eq!(accuracy_reward("A", "B", TaskKind::Choice), 0.0);
        assert_eq!(accuracy_reward(" two  words\n", "two words", TaskKind::ExactText), 1.0);
        assert_eq!(accuracy_reward("Two words", "two words", TaskKind::ExactText), 0.0);
    }

    #[test]
    fn combined() {
        let r = combined_reward("<think>..</think><answer>OCC</answer>", "CCO", TaskKind::Smiles, &cfg());
        assert_eq!((r.format_score, r.accuracy_score, r.total), (1.0, 1.0, 2.0));
        let r = combined_reward("OCC", "CCO", TaskKind::Smiles, &cfg());
        assert_eq!((r.format_score, r.accuracy_score, r.total), (0.0, 0.0, 0.0));
        assert!(!r.diagnostics.is_empty());
        let r = combined_reward("<think>..</think><answer>CCC</answer>", "CCO", TaskKind::Smiles, &cfg());
        assert_eq!((r.format_score, r.accuracy_score, r.total), (1.0, 0.0, 1.0));
    }

    #[test]
    fn config_json() {
        let c = RewardConfig::from_json(r#"{"answer_open": "[A]", "answer_close": "[/A]", "weights": {"format": 0.5, "accuracy": 2}}"#).unwrap();
        assert_eq!(c.think_open, "<think>");
        let r = combined_reward("<think>x</think>[A]CCO[/A]", "OCC", TaskKind::Smiles, &c);
        assert_eq!(r.total, 2.5);
        assert!(RewardConfig::from_json(r#"{"think_open": ""}"#).is_err());
        assert!(RewardConfig::from_json(r#"{"bogus": 1}"#).is_err());
        assert!("numeric".parse::<TaskKind>().is_err());
    }
}
