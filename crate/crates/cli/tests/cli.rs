use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const ESTER: &str = "[CH3:1][OH:2].[C:3](=[O:4])(O)[CH3:5]>>[CH3:1][O:2][C:3](=[O:4])[CH3:5]";

fn chemfg(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chemfg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // The tool may exit before reading its input.
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn core_fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

#[test]
fn annotate_mol_lists_groups() {
    let out = chemfg(&["annotate-mol"], "CCO\n");
    assert_eq!(out.status.code(), Some(0));
    let r = records(&out);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["canonical"], "CCO");
    assert_eq!(r[0]["functional_groups"][0]["name"], "alcohol");
}

#[test]
fn annotate_mol_reports_bad_lines() {
    let out = chemfg(&["annotate-mol"], "CCO\nnot-smiles\n");
    assert_eq!(out.status.code(), Some(1));
    let r = records(&out);
    assert_eq!(r.len(), 2);
    assert_eq!(r[1]["line"], 2);
    assert!(r[1]["error"].is_string());
}

#[test]
fn empty_inputs_are_clean() {
    for cmd in ["annotate-mol", "annotate-rxn", "score"] {
        let out = chemfg(&[cmd], "");
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn annotate_rxn_change_set() {
    let out = chemfg(&["annotate-rxn"], &format!("{ESTER}\nCC>>CC\n"));
    assert_eq!(out.status.code(), Some(0));
    let r = records(&out);
    let names = |key: &str| {
        let mut v: Vec<String> = r[0][key].as_array().unwrap().iter().map(|g| g["group_name"].as_str().unwrap().to_string()).collect();
        v.sort();
        v
    };
    assert_eq!(names("reacting_groups"), ["alcohol", "carboxylic acid"]);
    assert_eq!(names("resulting_groups"), ["ester"]);
    assert_eq!(r[0]["description"], "Reaction between alcohol and carboxylic acid forming ester.");
    assert_eq!(r[1]["quality"], "unannotated-error");
}

#[test]
fn annotate_rxn_malformed_line() {
    let out = chemfg(&["annotate-rxn"], "CC>CC\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_files_exit_two() {
    assert_eq!(chemfg(&["annotate-mol", "--input", "/does/not/exist"], "").status.code(), Some(2));
    assert_eq!(chemfg(&["annotate-mol", "--catalog", "/does/not/exist"], "CCO").status.code(), Some(2));
    assert_eq!(chemfg(&["score", "--config", "/does/not/exist"], "").status.code(), Some(2));
    assert_eq!(chemfg(&["build-corpus", "--config", "/does/not/exist"], "").status.code(), Some(2));
}

#[test]
fn export_catalog_has_241_entries() {
    let out = chemfg(&["export-catalog"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 241);
}

#[test]
fn score_lines() {
    let input = [
        r#"{"response": "<think>x</think><answer>OCC</answer>", "gold": "CCO", "task_kind": "smiles"}"#,
        r#"{"response": "OCC", "gold": "CCO", "task_kind": "smiles"}"#,
    ]
    .join("\n");
    let out = chemfg(&["score"], &input);
    assert_eq!(out.status.code(), Some(0));
    let r = records(&out);
    assert_eq!(r[0]["total"], 2.0);
    assert_eq!(r[1]["total"], 0.0);
    let bad = chemfg(&["score"], r#"{"response": "x", "gold": "1", "task_kind": "numeric"}"#);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn score_config_tags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("reward.json");
    std::fs::write(&cfg, r#"{"answer_open": "[A]", "answer_close": "[/A]"}"#).unwrap();
    let line = r#"{"response": "<think>x</think>[A]C[/A]", "gold": "C", "task_kind": "exact_text"}"#;
    let out = chemfg(&["score", "--config", cfg.to_str().unwrap()], line);
    assert_eq!(records(&out)[0]["total"], 2.0);
    std::fs::write(&cfg, r#"{"weights": {"format": -1, "accuracy": 1}}"#).unwrap();
    assert_eq!(chemfg(&["score", "--config", cfg.to_str().unwrap()], line).status.code(), Some(2));
}

fn write_config(dir: &Path, extra: &str) -> PathBuf {
    let cfg = dir.join("corpus.json");
    let text = format!(
        r#"{{"molecules": {:?}, "reactions": {:?}, "blacklist": {:?}, "output": "corpus.jsonl"{extra}}}"#,
        core_fixture("pipeline_molecules.tsv"),
        core_fixture("pipeline_reactions.smi"),
        core_fixture("blacklist.smi"),
    );
    std::fs::write(&cfg, text).unwrap();
    cfg
}

#[test]
fn build_corpus_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#", "seed": 5, "augment": 10"#);
    let run = || {
        let out = chemfg(&["build-corpus", "--config", cfg.to_str().unwrap()], "");
        // The molecule fixture carries unparsable lines on purpose.
        assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
        (
            std::fs::read(dir.path().join("corpus.jsonl")).unwrap(),
            std::fs::read_to_string(dir.path().join("corpus.jsonl.stats.json")).unwrap(),
        )
    };
    let (a, stats) = run();
    let (b, _) = run();
    assert_eq!(a, b);
    let s: Value = serde_json::from_str(&stats).unwrap();
    for side in ["molecules", "reactions"] {
        let c = &s[side];
        let n = |k: &str| c[k].as_u64().unwrap();
        assert_eq!(n("input"), n("output") + n("dropped") + n("deduped"));
    }
    assert_eq!(s["reactions"]["excluded"], 7);
    let text = String::from_utf8(a).unwrap();
    let reaction_entries = text.lines().filter(|l| l.contains("\"source_id\":\"reaction:")).count();
    assert_eq!(reaction_entries as u64, 10 * s["reactions"]["output"].as_u64().unwrap());
}

#[test]
fn build_corpus_overrides_and_mix() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#", "mix": {"ratio": [{"source": "molecule", "weight": 1}, {"source": "reaction", "weight": 2}]}"#,
    );
    let cfg = cfg.to_str().unwrap();
    assert_eq!(chemfg(&["build-corpus", "--config", cfg], "").status.code(), Some(2), "seed is mandatory");
    let out_path = dir.path().join("alt.jsonl");
    let out = chemfg(
        &["build-corpus", "--config", cfg, "--seed", "9", "--format", "json_dict", "--augment", "2", "--output", out_path.to_str().unwrap()],
        "",
    );
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let entries: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(entries.iter().all(|e| e["format"] == "json_dict"));
    let count = |p: &str| entries.iter().filter(|e| e["source_id"].as_str().unwrap().starts_with(p)).count() as i64;
    let (m, r) = (count("molecule:"), count("reaction:"));
    assert!((r - 2 * m).abs() <= 2, "{m} molecules vs {r} reactions");
    assert_eq!(chemfg(&["build-corpus", "--config", cfg, "--seed", "1", "--format", "yaml"], "").status.code(), Some(2));
}
