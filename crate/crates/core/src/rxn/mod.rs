//! Atom-mapped reactions: parsing, reaction centres and change sets.

mod centers;
mod changes;
mod describe;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mol::{parse_smiles, write_random, Molecule, SmilesError};

pub use centers::{reaction_centers, ReactionCenters};
pub use changes::{fg_changes, BondChange, ChangeSet, GroupChange, RingEvents};
pub use describe::describe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Reactant,
    Reagent,
    Product,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Reactant => "reactants",
            Side::Reagent => "reagents",
            Side::Product => "products",
        })
    }
}

/// An atom of one molecule on one side of a reaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AtomRef {
    pub molecule: usize,
    pub atom: usize,
}

/// Whether the atom mapping supports annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quality {
    Ok,
    /// Some product heavy atoms carry no map number.
    PartialMapping,
    /// Some product map numbers never occur among the reactants.
    Unbalanced,
}

impl Quality {
    pub fn as_str(self) -> &'static str {
        match self {
            Quality::Ok => "ok",
            Quality::PartialMapping => "partial-mapping",
            Quality::Unbalanced => "unbalanced",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RxnError {
    #[error("malformed reaction: {0}")]
    Arrow(String),
    #[error("invalid SMILES in {side}: {error}")]
    Smiles { side: Side, error: SmilesError },
    #[error("map number {map} used twice in {side}")]
    DuplicateMap { side: Side, map: u32 },
    #[error("unannotated reaction")]
    Unannotated,
}

#[derive(Debug, Clone)]
pub struct Reaction {
    pub reactants: Vec<Molecule>,
    pub reagents: Vec<Molecule>,
    pub products: Vec<Molecule>,
    reactant_maps: BTreeMap<u32, AtomRef>,
    product_maps: BTreeMap<u32, AtomRef>,
}

fn split_side(field: &str, side: Side) -> Result<Vec<Molecule>, RxnError> {
    if field.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mol = parse_smiles(field).map_err(|error| RxnError::Smiles { side, error })?;
    Ok(mol.split_components())
}

fn index_maps(mols: &[Molecule], side: Side) -> Result<BTreeMap<u32, AtomRef>, RxnError> {
    let mut maps = BTreeMap::new();
    for (m, mol) in mols.iter().enumerate() {
        for a in mol.atoms() {
            if let Some(n) = a.map_number {
                if maps.insert(n, AtomRef { molecule: m, atom: a.index }).is_some() {
                    return Err(RxnError::DuplicateMap { side, map: n });
                }
            }
        }
    }
    Ok(maps)
}

/// Parses `reactants>reagents>products`.
pub fn parse_reaction(text: &str) -> Result<Reaction, RxnError> {
    let fields: Vec<&str> = text.trim().split('>').collect();
    if fields.len() != 3 {
        return Err(RxnError::Arrow(format!(
            "expected reactants>reagents>products, found {} '>'",
            fields.len() - 1
        )));
    }
    let reactants = split_side(fields[0], Side::Reactant)?;
    let reagents = split_side(fields[1], Side::Reagent)?;
    let products = split_side(fields[2], Side::Product)?;
    Reaction::new(reactants, reagents, products)
}

impl Reaction {
    pub fn new(reactants: Vec<Molecule>, reagents: Vec<Molecule>, products: Vec<Molecule>) -> Result<Reaction, RxnError> {
        let reactant_maps = index_maps(&reactants, Side::Reactant)?;
        index_maps(&reagents, Side::Reagent)?;
        let product_maps = index_maps(&products, Side::Product)?;
        Ok(Reaction {
            reactants,
            reagents,
            products,
            reactant_maps,
            product_maps,
        })
    }

    /// Map number to atom, for the reactant or product side.
    pub fn map_index(&self, side: Side) -> &BTreeMap<u32, AtomRef> {
        match side {
            Side::Product => &self.product_maps,
            _ => &self.reactant_maps,
        }
    }

    pub fn molecules(&self, side: Side) -> &[Molecule] {
        match side {
            Side::Reactant => &self.reactants,
            Side::Reagent => &self.reagents,
            Side::Product => &self.products,
        }
    }

    /// Map numbers present on both reactant and product sides.
    pub fn shared_maps(&self) -> Vec<u32> {
        self.reactant_maps
            .keys()
            .filter(|k| self.product_maps.contains_key(k))
            .copied()
            .collect()
    }

    pub fn quality(&self) -> Quality {
        if self.product_maps.keys().any(|k| !self.reactant_maps.contains_key(k)) {
            return Quality::Unbalanced;
        }
        let unmapped_product_atom = self
            .products
            .iter()
            .any(|m| m.atoms().iter().any(|a| !a.is_hydrogen() && a.map_number.is_none()));
        if unmapped_product_atom {
            Quality::PartialMapping
        } else {
            Quality::Ok
        }
    }

    /// The same reaction run backwards.
    pub fn reversed(&self) -> Reaction {
        Reaction {
            reactants: self.products.clone(),
            reagents: self.reagents.clone(),
            products: self.reactants.clone(),
            reactant_maps: self.product_maps.clone(),
            product_maps: self.reactant_maps.clone(),
        }
    }

    /// Canonical reaction SMILES without atom maps.
    pub fn canonical_smiles(&self) -> String {
        let side = |mols: &[Molecule]| {
            let mut parts: Vec<String> = mols.iter().map(crate::mol::write_canonical).collect();
            parts.sort();
            parts.join(".")
        };
        format!("{}>{}>{}", side(&self.reactants), side(&self.reagents), side(&self.products))
    }

    /// A randomized rendering with atom maps kept; molecule order is preserved.
    pub fn write_random(&self, rng: &mut impl rand::Rng) -> String {
        let mut side = |mols: &[Molecule]| mols.iter().map(|m| write_random(m, rng)).collect::<Vec<_>>().join(".");
        let r = side(&self.reactants);
        let a = side(&self.reagents);
        let p = side(&self.products);
        format!("{r}>{a}>{p}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ESTER: &str = "[CH3:1][OH:2].[C:3](=[O:4])(O)[CH3:5]>>[CH3:1][O:2][C:3](=[O:4])[CH3:5]";

    #[test]
    fn parses_sides_and_maps() {
        let r = parse_reaction(ESTER).unwrap();
        assert_eq!((r.reactants.len(), r.reagents.len(), r.products.len()), (2, 0, 1));
        assert_eq!(r.shared_maps(), vec![1, 2, 3, 4, 5]);
        assert_eq!(r.map_index(Side::Reactant)[&3], AtomRef { molecule: 1, atom: 0 });
        assert_eq!(r.quality(), Quality::Ok);
    }

    #[test]
    fn unmapped_identity_is_valid() {
        let r = parse_reaction("CC>>CC").unwrap();
        assert!(r.map_index(Side::Reactant).is_empty());
        assert_eq!(r.quality(), Quality::PartialMapping);
    }

    #[test]
    fn arrow_errors() {
        assert!(matches!(parse_reaction("CC>CC"), Err(RxnError::Arrow(_))));
        assert!(matches!(parse_reaction("CC>>C>C"), Err(RxnError::Arrow(_))));
        assert!(matches!(
            parse_reaction("CC>>C1CC"),
            Err(RxnError::Smiles { side: Side::Product, .. })
        ));
    }

    #[test]
    fn duplicate_maps() {
        assert_eq!(
            parse_reaction("[CH3:1][CH3:1]>>CC").unwrap_err(),
            RxnError::DuplicateMap { side: Side::Reactant, map: 1 }
        );
        assert!(parse_reaction("[CH4:1].[CH4:1]>>C").is_err());
    }

    #[test]
    fn unbalanced_products() {
        let r = parse_reaction("[CH4:1]>>[CH3:1][CH3:2]").unwrap();
        assert_eq!(r.quality(), Quality::Unbalanced);
    }

    #[test]
    fn reagents_kept() {
        let r = parse_reaction("CCO>[Na+].[OH-]>CC[O-]").unwrap();
        assert_eq!(r.reagents.len(), 2);
    }
}
