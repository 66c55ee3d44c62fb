//! SMARTS patterns and substructure matching.
//!
//! Supported atom primitives: element symbols and `#n`, aromatic lowercase,
//! `a`, `A`, `*`, `Dn`, `Hn`, `hn`, `Xn`, `vn`, `+n`/`-n`, `R`/`Rn`,
//! `r`/`rn` and recursive `$(...)`. Bond primitives: `- = # : ~ @`; the
//! directional `/` and `\` read as plain single bonds. Logical operators are
//! `!`, `&`, `,` and the low-precedence `;`.

mod matcher;
mod parse;

use std::fmt;

pub use matcher::{has_match, match_all, MatchResult, Matcher};
pub use parse::{parse_smarts, SmartsError};

/// Boolean expression over primitives.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<P> {
    Prim(P),
    Not(Box<Expr<P>>),
    And(Vec<Expr<P>>),
    Or(Vec<Expr<P>>),
}

impl<P> Expr<P> {
    /// Evaluates with a primitive oracle; operators short-circuit.
    pub fn eval<'e>(&'e self, prim: &mut impl FnMut(&'e P) -> bool) -> bool {
        match self {
            Expr::Prim(p) => prim(p),
            Expr::Not(e) => !e.eval(prim),
            Expr::And(es) => es.iter().all(|e| e.eval(prim)),
            Expr::Or(es) => es.iter().any(|e| e.eval(prim)),
        }
    }

    /// Visits every primitive in the tree.
    pub fn primitives(&self) -> Vec<&P> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a P>) {
        match self {
            Expr::Prim(p) => out.push(p),
            Expr::Not(e) => e.collect(out),
            Expr::And(es) | Expr::Or(es) => es.iter().for_each(|e| e.collect(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AtomPrimitive {
    Any,
    Aromatic,
    Aliphatic,
    /// `C`, `c` or `#6`; `aromatic` is `None` for the `#n` spelling.
    Element { atomic_number: u8, aromatic: Option<bool> },
    Degree(u32),
    TotalH(u32),
    ImplicitH(u32),
    Connectivity(u32),
    Valence(u32),
    Charge(i32),
    /// `R` (None: in any ring) or `Rn` (member of exactly n SSSR rings).
    RingCount(Option<u32>),
    /// `r` (None: in any ring) or `rn` (smallest ring has n atoms; `r0` acyclic).
    RingSize(Option<u32>),
    Recursive(Box<Pattern>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondPrimitive {
    Single,
    Double,
    Triple,
    Aromatic,
    Any,
    Ring,
}

pub type AtomExpr = Expr<AtomPrimitive>;
pub type BondExpr = Expr<BondPrimitive>;

#[derive(Debug, Clone, PartialEq)]
pub struct PatternEdge {
    pub begin: usize,
    pub end: usize,
    pub expr: BondExpr,
}

/// A parsed SMARTS query graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub nodes: Vec<AtomExpr>,
    pub edges: Vec<PatternEdge>,
    pub source: String,
}

impl Pattern {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes that can only match a non-hydrogen atom.
    pub fn heavy_node_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| {
                !matches!(
                    n,
                    Expr::Prim(AtomPrimitive::Element { atomic_number: 1, .. })
                )
            })
            .count()
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = (usize, &PatternEdge)> {
        self.edges.iter().filter_map(move |e| {
            if e.begin == node {
                Some((e.end, e))
            } else if e.end == node {
                Some((e.begin, e))
            } else {
                None
            }
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl std::str::FromStr for Pattern {
    type Err = SmartsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_smarts(s)
    }
}
