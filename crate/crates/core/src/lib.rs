//! Functional-group perception, reaction change annotation and corpus
//! tooling for chemical language-model data.

pub mod catalog;
pub mod corpus;
pub mod mol;
pub mod reward;
pub mod rxn;
pub mod smarts;
