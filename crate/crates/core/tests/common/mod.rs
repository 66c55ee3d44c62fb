#![allow(dead_code)]

pub mod fixtures;
pub mod generator;
pub mod oracle;
