//! SMARTS text to [`Pattern`].

use thiserror::Error;

use super::{AtomExpr, AtomPrimitive, BondExpr, BondPrimitive, Expr, Pattern, PatternEdge};
use crate::mol::element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmartsError {
    #[error("empty SMARTS")]
    Empty,
    #[error("SMARTS syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unsupported SMARTS primitive '{primitive}' at {position}")]
    Unsupported { primitive: String, position: usize },
    #[error("unbalanced recursive group starting at {position}")]
    UnbalancedRecursion { position: usize },
}

/// Parses the supported SMARTS subset.
pub fn parse_smarts(text: &str) -> Result<Pattern, SmartsError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(SmartsError::Empty);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        text,
        pos: 0,
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    p.graph()?;
    Ok(Pattern {
        nodes: p.nodes,
        edges: p.edges,
        source: text.to_string(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    nodes: Vec<AtomExpr>,
    edges: Vec<PatternEdge>,
}

fn default_bond() -> BondExpr {
    Expr::Or(vec![
        Expr::Prim(BondPrimitive::Single),
        Expr::Prim(BondPrimitive::Aromatic),
    ])
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.src.get(self.pos + k).copied()
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, SmartsError> {
        Err(SmartsError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn unsupported<T>(&self, primitive: impl Into<String>) -> Result<T, SmartsError> {
        Err(SmartsError::Unsupported {
            primitive: primitive.into(),
            position: self.pos,
        })
    }

    fn number(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.text[start..self.pos].parse().ok()
        }
    }

    fn graph(&mut self) -> Result<(), SmartsError> {
        let mut prev: Option<usize> = None;
        let mut branches: Vec<Option<usize>> = Vec::new();
        let mut pending: Option<BondExpr> = None;
        let mut rings: Vec<Option<(usize, Option<BondExpr>)>> = vec![None; 100];
        while let Some(c) = self.peek() {
            match c {
                b'(' => {
                    if prev.is_none() || pending.is_some() {
                        return self.syntax("branch without a preceding atom");
                    }
                    branches.push(prev);
                    self.pos += 1;
                }
                b')' => {
                    if pending.is_some() {
                        return self.syntax("bond before ')'");
                    }
                    prev = match branches.pop() {
                        Some(p) => p,
                        None => return self.syntax("unmatched ')'"),
                    };
                    self.pos += 1;
                }
                b'.' => {
                    if pending.is_some() || !branches.is_empty() {
                        return self.syntax("misplaced '.'");
                    }
                    prev = None;
                    self.pos += 1;
                }
                b'0'..=b'9' | b'%' => {
                    let Some(atom) = prev else {
                        return self.syntax("ring label without an atom");
                    };
                    let label = if c == b'%' {
                        self.pos += 1;
                        let start = self.pos;
                        if !(self.peek().is_some_and(|d| d.is_ascii_digit())
                            && self.peek_at(1).is_some_and(|d| d.is_ascii_digit()))
                        {
                            return self.syntax("'%' needs two digits");
                        }
                        self.pos += 2;
                        self.text[start..self.pos].parse::<usize>().unwrap()
                    } else {
                        self.pos += 1;
                        (c - b'0') as usize
                    };
                    match rings[label].take() {
                        Some((other, first_bond)) => {
                            if other == atom {
                                return self.syntax("ring closure to itself");
                            }
                            let expr = match (first_bond, pending.take()) {
                                (Some(a), Some(b)) if a != b => {
                                    return self.syntax("conflicting ring-closure bonds")
                                }
                                (Some(a), _) => a,
                                (None, Some(b)) => b,
                                (None, None) => default_bond(),
                            };
                            self.edges.push(PatternEdge { begin: other, end: atom, expr });
                        }
                        None => rings[label] = Some((atom, pending.take())),
                    }
                }
                b'-' | b'=' | b'#' | b':' | b'~' | b'@' | b'!' | b'/' | b'\\' | b'&' | b',' | b';' => {
                    if prev.is_none() || pending.is_some() {
                        return self.syntax("bond without a preceding atom");
                    }
                    pending = Some(self.bond_expr()?);
                }
                b'$' => return self.unsupported("$"),
                _ => {
                    let node = self.atom()?;
                    if let Some(p) = prev {
                        let expr = pending.take().unwrap_or_else(default_bond);
                        self.edges.push(PatternEdge { begin: p, end: node, expr });
                    } else if pending.is_some() {
                        return self.syntax("bond without a preceding atom");
                    }
                    prev = Some(node);
                }
            }
        }
        if pending.is_some() {
            return self.syntax("dangling bond");
        }
        if !branches.is_empty() {
            return self.syntax("unclosed branch");
        }
        if let Some(label) = rings.iter().position(|r| r.is_some()) {
            return self.syntax(format!("unclosed ring label {label}"));
        }
        if self.nodes.is_empty() {
            return self.syntax("no atoms");
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<usize, SmartsError> {
        let expr = if self.peek() == Some(b'[') {
            self.pos += 1;
            let e = self.bracket()?;
            if self.peek() != Some(b']') {
                return self.syntax("expected ']'");
            }
            self.pos += 1;
            e
        } else {
            Expr::Prim(self.bare_atom()?)
        };
        self.nodes.push(expr);
        Ok(self.nodes.len() - 1)
    }

    fn bare_atom(&mut self) -> Result<AtomPrimitive, SmartsError> {
        let rest = &self.text[self.pos..];
        for (sym, z) in [("Cl", 17u8), ("Br", 35)] {
            if rest.starts_with(sym) {
                self.pos += 2;
                return Ok(AtomPrimitive::Element { atomic_number: z, aromatic: None });
            }
        }
        let c = self.peek().unwrap();
        self.pos += 1;
        let prim = match c {
            b'*' => AtomPrimitive::Any,
            b'a' => AtomPrimitive::Aromatic,
            b'A' => AtomPrimitive::Aliphatic,
            b'B' | b'C' | b'N' | b'O' | b'P' | b'S' | b'F' | b'I' => AtomPrimitive::Element {
                atomic_number: element::atomic_number(&(c as char).to_string()).unwrap(),
                aromatic: aromatic_flag(element::atomic_number(&(c as char).to_string()).unwrap(), false),
            },
            b'b' | b'c' | b'n' | b'o' | b'p' | b's' => AtomPrimitive::Element {
                atomic_number: element::atomic_number(&(c.to_ascii_uppercase() as char).to_string()).unwrap(),
                aromatic: Some(true),
            },
            _ => {
                self.pos -= 1;
                return self.syntax(format!("unexpected character '{}'", c as char));
            }
        };
        Ok(prim)
    }

    // Precedence, loosest first: ';'  ','  '&' or adjacency  '!'.
    fn bracket(&mut self) -> Result<AtomExpr, SmartsError> {
        // A lone [H] (optionally charged) is the hydrogen atom, not an H count.
        if self.peek() == Some(b'H') {
            let after = self.peek_at(1);
            if matches!(after, Some(b']') | Some(b'+') | Some(b'-')) {
                self.pos += 1;
                let h = Expr::Prim(AtomPrimitive::Element { atomic_number: 1, aromatic: None });
                if after == Some(b']') {
                    return Ok(h);
                }
                let charge = self.charge()?;
                return Ok(Expr::And(vec![h, Expr::Prim(charge)]));
            }
        }
        self.low_and(&mut Self::atom_primitive)
    }

    fn bond_expr(&mut self) -> Result<BondExpr, SmartsError> {
        self.low_and(&mut Self::bond_primitive)
    }

    fn low_and<P: Clone>(
        &mut self,
        prim: &mut impl FnMut(&mut Self) -> Result<Option<P>, SmartsError>,
    ) -> Result<Expr<P>, SmartsError> {
        let mut parts = vec![self.or_expr(prim)?];
        while self.peek() == Some(b';') {
            self.pos += 1;
            parts.push(self.or_expr(prim)?);
        }
        Ok(collapse(parts, Expr::And))
    }

    fn or_expr<P: Clone>(
        &mut self,
        prim: &mut impl FnMut(&mut Self) -> Result<Option<P>, SmartsError>,
    ) -> Result<Expr<P>, SmartsError> {
        let mut parts = vec![self.and_expr(prim)?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            parts.push(self.and_expr(prim)?);
        }
        Ok(collapse(parts, Expr::Or))
    }

    fn and_expr<P: Clone>(
        &mut self,
        prim: &mut impl FnMut(&mut Self) -> Result<Option<P>, SmartsError>,
    ) -> Result<Expr<P>, SmartsError> {
        let mut parts = vec![self.not_expr(prim)?];
        loop {
            if self.peek() == Some(b'&') {
                self.pos += 1;
                parts.push(self.not_expr(prim)?);
                continue;
            }
            let save = self.pos;
            match self.not_expr_opt(prim)? {
                Some(e) => parts.push(e),
                None => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(collapse(parts, Expr::And))
    }

    fn not_expr<P: Clone>(
        &mut self,
        prim: &mut impl FnMut(&mut Self) -> Result<Option<P>, SmartsError>,
    ) -> Result<Expr<P>, SmartsError> {
        match self.not_expr_opt(prim)? {
            Some(e) => Ok(e),
            None => match self.peek() {
                Some(c) => self.syntax(format!("expected a primitive, found '{}'", c as char)),
                None => self.syntax("expected a primitive"),
            },
        }
    }

    fn not_expr_opt<P: Clone>(
        &mut self,
        prim: &mut impl FnMut(&mut Self) -> Result<Option<P>, SmartsError>,
    ) -> Result<Option<Expr<P>>, SmartsError> {
        if self.peek() == Some(b'!') {
            self.pos += 1;
            let inner = self.not_expr(prim)?;
            return Ok(Some(Expr::Not(Box::new(inner))));
        }
        Ok(prim(self)?.map(Expr::Prim))
    }

    fn charge(&mut self) -> Result<AtomPrimitive, SmartsError> {
        let sign = self.peek().unwrap();
        let unit = if sign == b'+' { 1 } else { -1 };
        self.pos += 1;
        if let Some(n) = self.number() {
            return Ok(AtomPrimitive::Charge(unit * n as i32));
        }
        let mut total = unit;
        while self.peek() == Some(sign) {
            self.pos += 1;
            total += unit;
        }
        Ok(AtomPrimitive::Charge(total))
    }

    fn atom_primitive(&mut self) -> Result<Option<AtomPrimitive>, SmartsError> {
        let Some(c) = self.peek() else { return Ok(None) };
        let start = self.pos;
        let prim = match c {
            b'*' => {
                self.pos += 1;
                AtomPrimitive::Any
            }
            b'#' => {
                self.pos += 1;
                match self.number() {
                    Some(z) if (1..=118).contains(&z) => AtomPrimitive::Element {
                        atomic_number: z as u8,
                        aromatic: None,
                    },
                    _ => return self.syntax("'#' needs an atomic number"),
                }
            }
            b'+' | b'-' => self.charge()?,
            b'$' => {
                if self.peek_at(1) != Some(b'(') {
                    return self.syntax("'$' must open a recursive group");
                }
                let open = self.pos;
                let mut depth = 0usize;
                let mut end = None;
                for (k, &b) in self.src[open + 1..].iter().enumerate() {
                    match b {
                        b'(' => depth += 1,
                        b')' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(open + 1 + k);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let Some(end) = end else {
                    return Err(SmartsError::UnbalancedRecursion { position: open });
                };
                let inner_text = &self.text[open + 2..end];
                let inner = parse_smarts(inner_text).map_err(|e| shift(e, open + 2))?;
                self.pos = end + 1;
                AtomPrimitive::Recursive(Box::new(inner))
            }
            b'0'..=b'9' => {
                self.number();
                return Err(SmartsError::Unsupported {
                    primitive: format!("isotope {}", &self.text[start..self.pos]),
                    position: start,
                });
            }
            b'@' => return self.unsupported("@ (chirality)"),
            b':' => return self.unsupported(": (atom map)"),
            b'D' | b'H' | b'h' | b'X' | b'v' | b'R' | b'r' | b'x' | b'A' | b'a' | b'Z' | b'z' | b'^' | b'i' => {
                if let Some(e) = self.element_symbol()? {
                    e
                } else {
                    self.pos += 1;
                    let n = self.number();
                    match c {
                        b'D' => AtomPrimitive::Degree(n.unwrap_or(1)),
                        b'H' => AtomPrimitive::TotalH(n.unwrap_or(1)),
                        b'h' => AtomPrimitive::ImplicitH(n.unwrap_or(1)),
                        b'X' => AtomPrimitive::Connectivity(n.unwrap_or(1)),
                        b'v' => AtomPrimitive::Valence(n.unwrap_or(1)),
                        b'R' => AtomPrimitive::RingCount(n),
                        b'r' => AtomPrimitive::RingSize(n),
                        b'A' if n.is_none() => AtomPrimitive::Aliphatic,
                        b'a' if n.is_none() => AtomPrimitive::Aromatic,
                        _ => {
                            return Err(SmartsError::Unsupported {
                                primitive: self.text[start..self.pos].to_string(),
                                position: start,
                            })
                        }
                    }
                }
            }
            _ => match self.element_symbol()? {
                Some(e) => e,
                None => return Ok(None),
            },
        };
        Ok(Some(prim))
    }

    /// Element symbol at the cursor: two-letter symbols win over one-letter
    /// ones, lowercase means aromatic.
    fn element_symbol(&mut self) -> Result<Option<AtomPrimitive>, SmartsError> {
        let Some(c) = self.peek() else { return Ok(None) };
        if c.is_ascii_uppercase() {
            if let Some(n) = self.peek_at(1).filter(|n| n.is_ascii_lowercase()) {
                let two = format!("{}{}", c as char, n as char);
                if let Some(z) = element::atomic_number(&two) {
                    self.pos += 2;
                    return Ok(Some(AtomPrimitive::Element {
                        atomic_number: z,
                        aromatic: aromatic_flag(z, false),
                    }));
                }
            }
            if matches!(c, b'D' | b'H' | b'X' | b'R' | b'A' | b'Z') {
                return Ok(None);
            }
            if let Some(z) = element::atomic_number(&(c as char).to_string()) {
                self.pos += 1;
                return Ok(Some(AtomPrimitive::Element {
                    atomic_number: z,
                    aromatic: aromatic_flag(z, false),
                }));
            }
            return self.unsupported((c as char).to_string());
        }
        if c.is_ascii_lowercase() {
            for sym in ["se", "as"] {
                if self.text[self.pos..].starts_with(sym) {
                    self.pos += 2;
                    let z = element::atomic_number(&capitalize(sym)).unwrap();
                    return Ok(Some(AtomPrimitive::Element { atomic_number: z, aromatic: Some(true) }));
                }
            }
            if matches!(c, b'b' | b'c' | b'n' | b'o' | b'p' | b's') {
                self.pos += 1;
                let z = element::atomic_number(&(c.to_ascii_uppercase() as char).to_string()).unwrap();
                return Ok(Some(AtomPrimitive::Element { atomic_number: z, aromatic: Some(true) }));
            }
        }
        Ok(None)
    }

    fn bond_primitive(&mut self) -> Result<Option<BondPrimitive>, SmartsError> {
        let prim = match self.peek() {
            Some(b'-') | Some(b'/') | Some(b'\\') => BondPrimitive::Single,
            Some(b'=') => BondPrimitive::Double,
            Some(b'#') => BondPrimitive::Triple,
            Some(b':') => BondPrimitive::Aromatic,
            Some(b'~') => BondPrimitive::Any,
            Some(b'@') => BondPrimitive::Ring,
            _ => return Ok(None),
        };
        self.pos += 1;
        Ok(Some(prim))
    }
}

/// Aliphatic spelling of an element that cannot be aromatic matches either.
fn aromatic_flag(z: u8, aromatic: bool) -> Option<bool> {
    element::aromatic_capable(z).then_some(aromatic)
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_ascii_uppercase().to_string() + c.as_str(),
        None => String::new(),
    }
}

fn collapse<P>(mut parts: Vec<Expr<P>>, join: fn(Vec<Expr<P>>) -> Expr<P>) -> Expr<P> {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        join(parts)
    }
}

fn shift(e: SmartsError, offset: usize) -> SmartsError {
    match e {
        SmartsError::Syntax { position, message } => SmartsError::Syntax {
            position: position + offset,
            message,
        },
        SmartsError::Unsupported { primitive, position } => SmartsError::Unsupported {
            primitive,
            position: position + offset,
        },
        SmartsError::UnbalancedRecursion { position } => SmartsError::UnbalancedRecursion {
            position: position + offset,
        },
        SmartsError::Empty => SmartsError::Syntax {
            position: offset,
            message: "empty recursive group".into(),
        },
    }
}
