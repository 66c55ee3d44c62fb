mod common;

use chemfg::mol::{enumerate_random, parse_smiles, write_canonical};
use chemfg::reward::{accuracy_reward, combined_reward, format_reward, RewardConfig, TaskKind};
use common::fixtures::{corpus_labels, text};
use proptest::prelude::*;

#[test]
fn format_suite() {
    let cfg = RewardConfig::default();
    let cases = text("format_cases.jsonl");
    let mut n = 0;
    for line in cases.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let response = v["response"].as_str().unwrap();
        assert_eq!(format_reward(response, &cfg), v["expected"].as_f64().unwrap(), "{response:?}");
        n += 1;
    }
    assert_eq!(n, 30);
}

#[test]
fn renderings_of_gold_score_one() {
    for (i, (smiles, _)) in corpus_labels().iter().enumerate().take(200) {
        let mol = parse_smiles(smiles).unwrap();
        let gold = write_canonical(&mol);
        for r in enumerate_random(&mol, 5, i as u64) {
            assert_eq!(accuracy_reward(&r, &gold, TaskKind::Smiles), 1.0, "{r} vs {gold}");
        }
    }
}

#[test]
fn different_molecules_score_zero() {
    let labels = corpus_labels();
    let gold = &labels[0].0;
    let gold_canon = write_canonical(&parse_smiles(gold).unwrap());
    for (s, _) in &labels[1..] {
        let differs = write_canonical(&parse_smiles(s).unwrap()) != gold_canon;
        assert_eq!(accuracy_reward(s, gold, TaskKind::Smiles), if differs { 0.0 } else { 1.0 });
    }
}

proptest! {
    #[test]
    fn arbitrary_input_is_scored(response in ".{0,80}", gold in "[A-Za-z0-9()=#.]{1,12}") {
        let cfg = RewardConfig::default();
        for kind in [TaskKind::Smiles, TaskKind::Choice, TaskKind::ExactText] {
            let r = combined_reward(&response, &gold, kind, &cfg);
            prop_assert!(r.format_score == 0.0 || r.format_score == 1.0);
            prop_assert!(r.accuracy_score == 0.0 || r.accuracy_score == 1.0);
            prop_assert_eq!(r.total, r.format_score + r.accuracy_score);
        }
    }

    #[test]
    fn wrapped_answers_are_well_formed(thought in "[a-z ]{0,40}", answer in "[A-Za-z0-9]{1,20}") {
        let cfg = RewardConfig::default();
        let response = format!("<think>{thought}</think><answer>{answer}</answer>");
        prop_assert_eq!(format_reward(&response, &cfg), 1.0);
        prop_assert_eq!(combined_reward(&response, &answer, TaskKind::ExactText, &cfg).total, 2.0);
    }
}
