//! The functional-group catalog and group perception.
//!
//! The bundled catalog ships as a tab-separated file compiled into the
//! library; [`load_catalog`] reads it (or a user file with the same layout)
//! and compiles every SMARTS up front.

mod perceive;

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::smarts::{parse_smarts, Pattern, SmartsError};

pub use perceive::{fg_histogram, group_names, perceive, FGMatch};

/// Text of the bundled catalog, byte for byte.
pub const DEFAULT_CATALOG: &str = include_str!("../../data/functional_groups.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Hydrocarbon,
    Boron,
    Oxygen,
    Nitrogen,
    Sulfur,
    Silicon,
    Phosphorus,
    Halogen,
    Organometallic,
    Aromatic,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::Hydrocarbon,
        Category::Boron,
        Category::Oxygen,
        Category::Nitrogen,
        Category::Sulfur,
        Category::Silicon,
        Category::Phosphorus,
        Category::Halogen,
        Category::Organometallic,
        Category::Aromatic,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Category::Hydrocarbon => "Hydrocarbon Groups",
            Category::Boron => "Boron Groups",
            Category::Oxygen => "Oxygen Groups",
            Category::Nitrogen => "Nitrogen Groups",
            Category::Sulfur => "Sulfur Groups",
            Category::Silicon => "Silicon Groups",
            Category::Phosphorus => "Phosphorus Groups",
            Category::Halogen => "Halogen Groups",
            Category::Organometallic => "Organometallic Groups",
            Category::Aromatic => "Aromatic",
        }
    }

    pub fn from_label(label: &str) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.label() == label)
    }

    /// Group count of this category in the bundled catalog.
    pub fn default_count(self) -> usize {
        match self {
            Category::Hydrocarbon => 7,
            Category::Boron => 6,
            Category::Oxygen => 36,
            Category::Nitrogen => 62,
            Category::Sulfur => 85,
            Category::Silicon => 5,
            Category::Phosphorus => 17,
            Category::Halogen => 14,
            Category::Organometallic => 5,
            Category::Aromatic => 4,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone)]
pub struct FunctionalGroupDef {
    pub name: String,
    pub category: Category,
    pub smarts: String,
    pub pattern: Pattern,
    /// Heavy-atom count of the pattern; larger groups shadow nested smaller ones.
    pub priority: usize,
    pub positive_example: String,
    pub negative_example: String,
    /// 1-based line in the source file.
    pub line: usize,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    definitions: Vec<FunctionalGroupDef>,
    source: String,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: expected 5 tab-separated fields, found {found}")]
    Fields { line: usize, found: usize },
    #[error("line {line}: duplicate group name '{name}'")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: unknown category '{category}'")]
    Category { line: usize, category: String },
    #[error("line {line}: group '{name}' has invalid SMARTS: {error}")]
    Smarts { line: usize, name: String, error: SmartsError },
    #[error("catalog has {found} groups in '{category}', expected {expected}")]
    CategoryCount { category: String, expected: usize, found: usize },
}

impl Catalog {
    /// Parses catalog text without the bundled-default count check.
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let mut definitions: Vec<FunctionalGroupDef> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if fields.len() != 5 {
                return Err(CatalogError::Fields { line, found: fields.len() });
            }
            let name = fields[0].to_string();
            if definitions.iter().any(|d| d.name == name) {
                return Err(CatalogError::Duplicate { line, name });
            }
            let category = Category::from_label(fields[1]).ok_or_else(|| CatalogError::Category {
                line,
                category: fields[1].to_string(),
            })?;
            let pattern = parse_smarts(fields[2]).map_err(|error| CatalogError::Smarts {
                line,
                name: name.clone(),
                error,
            })?;
            definitions.push(FunctionalGroupDef {
                name,
                category,
                smarts: fields[2].to_string(),
                priority: pattern.heavy_node_count(),
                pattern,
                positive_example: fields[3].to_string(),
                negative_example: fields[4].to_string(),
                line,
            });
        }
        Ok(Catalog {
            definitions,
            source: text.to_string(),
        })
    }

    /// The bundled catalog, with its per-category counts verified.
    pub fn bundled() -> Result<Catalog, CatalogError> {
        let catalog = Catalog::parse(DEFAULT_CATALOG)?;
        for c in Category::ALL {
            let found = catalog.category_size(c);
            if found != c.default_count() {
                return Err(CatalogError::CategoryCount {
                    category: c.label().to_string(),
                    expected: c.default_count(),
                    found,
                });
            }
        }
        Ok(catalog)
    }

    pub fn definitions(&self) -> &[FunctionalGroupDef] {
        &self.definitions
    }

    pub fn len(&self) -> usize {
        self.definitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&FunctionalGroupDef> {
        self.definitions.iter().find(|d| d.name == name)
    }

    pub fn category_size(&self, category: Category) -> usize {
        self.definitions.iter().filter(|d| d.category == category).count()
    }

    /// Number of groups under a category label such as `"Sulfur Groups"`.
    pub fn category_count(&self, label: &str) -> usize {
        Category::from_label(label).map_or(0, |c| self.category_size(c))
    }

    /// The text the catalog was loaded from.
    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Loads a catalog file, or the bundled default when `source` is `None`.
pub fn load_catalog(source: Option<&Path>) -> Result<Catalog, CatalogError> {
    match source {
        None => Catalog::bundled(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            Catalog::parse(&text)
        }
    }
}
