use chemfg::catalog::load_catalog;
use chemfg::mol::parse_smiles;
use chemfg::smarts::has_match;

#[test]
fn every_example_behaves() {
    let catalog = load_catalog(None).unwrap();
    let mut failures = Vec::new();
    for def in catalog.definitions() {
        for (smiles, want) in [(&def.positive_example, true), (&def.negative_example, false)] {
            match parse_smiles(smiles) {
                Ok(m) if has_match(&def.pattern, &m) == want => {}
                Ok(_) => failures.push(format!("{}: {smiles} should {}match", def.name, if want { "" } else { "not " })),
                Err(e) => failures.push(format!("{}: {smiles}: {e}", def.name)),
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
