use std::path::Path;

use chemfg::catalog::perceive;
use chemfg::mol::{parse_smiles, write_canonical};
use chemfg::rxn::{fg_changes, parse_reaction, RxnError};
use serde_json::json;

use crate::{catalog, io, Failure};

fn error_record(line: usize, input: &str, error: String) -> serde_json::Value {
    json!({ "line": line, "input": input, "error": error })
}

pub fn molecules(input: Option<&Path>, output: Option<&Path>, catalog_path: Option<&Path>) -> Result<usize, Failure> {
    let catalog = catalog(catalog_path)?;
    let reader = io::reader(input)?;
    let mut out = io::writer(output)?;
    let mut errors = 0;
    io::for_each_line(reader, |n, line| {
        let smiles = line.trim();
        let record = match parse_smiles(smiles) {
            Ok(mol) => {
                let groups: Vec<_> = perceive(&mol, &catalog)
                    .into_iter()
                    .map(|m| json!({ "name": m.group_name, "atoms": m.atoms }))
                    .collect();
                json!({ "smiles": smiles, "canonical": write_canonical(&mol), "functional_groups": groups })
            }
            Err(e) => {
                errors += 1;
                error_record(n, smiles, e.to_string())
            }
        };
        io::write_line(&mut *out, &record)
    })?;
    io::finish(out)?;
    Ok(errors)
}

/// Reactions without atom maps are reported with quality
/// `unannotated-error`; they are well-formed input and do not count as
/// failures.
pub fn reactions(input: Option<&Path>, output: Option<&Path>, catalog_path: Option<&Path>) -> Result<usize, Failure> {
    let catalog = catalog(catalog_path)?;
    let reader = io::reader(input)?;
    let mut out = io::writer(output)?;
    let mut errors = 0;
    io::for_each_line(reader, |n, line| {
        let text = line.trim();
        let record = match parse_reaction(text).and_then(|rxn| fg_changes(&rxn, &catalog)) {
            Ok(change) => {
                let mut record = serde_json::Map::new();
                record.insert("rxn_smiles".into(), text.into());
                if let serde_json::Value::Object(fields) = change.to_json() {
                    record.extend(fields);
                }
                serde_json::Value::Object(record)
            }
            Err(RxnError::Unannotated) => json!({
                "rxn_smiles": text,
                "quality": "unannotated-error",
                "error": RxnError::Unannotated.to_string(),
            }),
            Err(e) => {
                errors += 1;
                error_record(n, text, e.to_string())
            }
        };
        io::write_line(&mut *out, &record)
    })?;
    io::finish(out)?;
    Ok(errors)
}
