//! SMILES reader.
//!
//! Grammar: organic-subset atoms, bracket atoms (isotope, chirality, H
//! count, charge, atom class), bonds `- = # : / \`, branches, ring
//! closures `0-9` and `%nn`, and `.` fragment separators. Stereo markers are
//! recorded on the graph but carry no meaning downstream.

use std::collections::BTreeMap;

use thiserror::Error;

use super::element::{self, atomic_number, charged_valences, default_valence};
use super::{aromatic, kekule, Atom, Bond, BondOrder, BondStereo, Molecule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmilesError {
    #[error("empty SMILES")]
    Empty,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown element symbol '{symbol}' at position {position}")]
    UnknownElement { symbol: String, position: usize },
    #[error("unclosed ring bond {label} opened at position {position}")]
    UnclosedRing { label: u32, position: usize },
    #[error("valence violation on atom {atom} ({symbol}) at position {position}")]
    Valence {
        atom: usize,
        symbol: String,
        position: usize,
    },
    #[error("can not kekulize aromatic system at atom {atom} (position {position})")]
    Kekulize { atom: usize, position: usize },
}

impl SmilesError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        SmilesError::Syntax {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BondSymbol {
    Single,
    Double,
    Triple,
    Aromatic,
    Up,
    Down,
}

impl BondSymbol {
    fn order(self) -> BondOrder {
        match self {
            BondSymbol::Single | BondSymbol::Up | BondSymbol::Down => BondOrder::Single,
            BondSymbol::Double => BondOrder::Double,
            BondSymbol::Triple => BondOrder::Triple,
            BondSymbol::Aromatic => BondOrder::Aromatic,
        }
    }

    fn stereo(self) -> Option<BondStereo> {
        match self {
            BondSymbol::Up => Some(BondStereo::Up),
            BondSymbol::Down => Some(BondStereo::Down),
            _ => None,
        }
    }
}

struct RawAtom {
    atom: Atom,
    position: usize,
}

struct RawBond {
    begin: usize,
    end: usize,
    symbol: Option<BondSymbol>,
}

struct Reader<'a> {
    text: &'a [u8],
    pos: usize,
    atoms: Vec<RawAtom>,
    bonds: Vec<RawBond>,
}

/// Parses a SMILES string into a fully perceived [`Molecule`].
pub fn parse_smiles(text: &str) -> Result<Molecule, SmilesError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(SmilesError::Empty);
    }
    let mut reader = Reader {
        text: text.as_bytes(),
        pos: 0,
        atoms: Vec::new(),
        bonds: Vec::new(),
    };
    reader.read_chain()?;
    reader.build()
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.text.get(self.pos + offset).copied()
    }

    fn read_chain(&mut self) -> Result<(), SmilesError> {
        let mut prev: Option<usize> = None;
        let mut pending: Option<(BondSymbol, usize)> = None;
        let mut branches: Vec<usize> = Vec::new();
        let mut open_rings: BTreeMap<u32, (usize, Option<BondSymbol>, usize)> = BTreeMap::new();

        while let Some(c) = self.peek() {
            let here = self.pos;
            match c {
                b'(' => {
                    let Some(p) = prev else {
                        return Err(SmilesError::syntax(here, "branch without a preceding atom"));
                    };
                    if pending.is_some() {
                        return Err(SmilesError::syntax(here, "bond before branch"));
                    }
                    if self.peek_at(1) == Some(b')') {
                        return Err(SmilesError::syntax(here, "empty branch"));
                    }
                    branches.push(p);
                    self.pos += 1;
                }
                b')' => {
                    let Some(p) = branches.pop() else {
                        return Err(SmilesError::syntax(here, "unbalanced ')'"));
                    };
                    if pending.is_some() {
                        return Err(SmilesError::syntax(here, "dangling bond"));
                    }
                    prev = Some(p);
                    self.pos += 1;
                }
                b'.' => {
                    if pending.is_some() || prev.is_none() {
                        return Err(SmilesError::syntax(here, "misplaced '.'"));
                    }
                    if !branches.is_empty() {
                        return Err(SmilesError::syntax(here, "'.' inside a branch"));
                    }
                    prev = None;
                    self.pos += 1;
                }
                b'-' | b'=' | b'#' | b':' | b'/' | b'\\' | b'$' => {
                    if pending.is_some() {
                        return Err(SmilesError::syntax(here, "two consecutive bonds"));
                    }
                    if prev.is_none() {
                        return Err(SmilesError::syntax(here, "bond without a preceding atom"));
                    }
                    let sym = match c {
                        b'-' => BondSymbol::Single,
                        b'=' => BondSymbol::Double,
                        b'#' => BondSymbol::Triple,
                        b':' => BondSymbol::Aromatic,
                        b'/' => BondSymbol::Up,
                        b'\\' => BondSymbol::Down,
                        _ => return Err(SmilesError::syntax(here, "quadruple bonds are not supported")),
                    };
                    pending = Some((sym, here));
                    self.pos += 1;
                }
                b'0'..=b'9' | b'%' => {
                    let Some(p) = prev else {
                        return Err(SmilesError::syntax(here, "ring bond without a preceding atom"));
                    };
                    let label = self.read_ring_label()?;
                    let sym = pending.take().map(|(s, _)| s);
                    match open_rings.remove(&label) {
                        Some((other, other_sym, _)) => {
                            if other == p {
                                return Err(SmilesError::syntax(here, "ring bond to itself"));
                            }
                            let symbol = match (other_sym, sym) {
                                (Some(a), Some(b)) if a.order() != b.order() => {
                                    return Err(SmilesError::syntax(here, "conflicting ring bond orders"));
                                }
                                (Some(a), _) => Some(a),
                                (None, b) => b,
                            };
                            self.add_bond(other, p, symbol, here)?;
                        }
                        None => {
                            open_rings.insert(label, (p, sym, here));
                        }
                    }
                }
                _ => {
                    let atom = self.read_atom()?;
                    if let Some(p) = prev {
                        let sym = pending.take().map(|(s, _)| s);
                        self.add_bond(p, atom, sym, here)?;
                    } else if let Some((_, pos)) = pending {
                        return Err(SmilesError::syntax(pos, "bond without a preceding atom"));
                    }
                    prev = Some(atom);
                }
            }
        }
        if let Some((_, pos)) = pending {
            return Err(SmilesError::syntax(pos, "dangling bond at end of input"));
        }
        if !branches.is_empty() {
            return Err(SmilesError::syntax(self.text.len(), "unclosed branch"));
        }
        if let Some((&label, &(_, _, position))) = open_rings.iter().next() {
            return Err(SmilesError::UnclosedRing { label, position });
        }
        Ok(())
    }

    fn read_ring_label(&mut self) -> Result<u32, SmilesError> {
        let start = self.pos;
        if self.peek() == Some(b'%') {
            let digits = &self.text.get(self.pos + 1..self.pos + 3);
            match digits {
                Some(d) if d.iter().all(u8::is_ascii_digit) => {
                    self.pos += 3;
                    Ok(((d[0] - b'0') * 10 + (d[1] - b'0')) as u32)
                }
                _ => Err(SmilesError::syntax(start, "'%' must be followed by two digits")),
            }
        } else {
            let d = self.text[self.pos] - b'0';
            self.pos += 1;
            Ok(d as u32)
        }
    }

    fn add_bond(&mut self, a: usize, b: usize, symbol: Option<BondSymbol>, pos: usize) -> Result<(), SmilesError> {
        if self
            .bonds
            .iter()
            .any(|x| (x.begin == a && x.end == b) || (x.begin == b && x.end == a))
        {
            return Err(SmilesError::syntax(pos, "duplicate bond"));
        }
        self.bonds.push(RawBond { begin: a, end: b, symbol });
        Ok(())
    }

    fn read_atom(&mut self) -> Result<usize, SmilesError> {
        let start = self.pos;
        let c = self.peek().unwrap();
        let atom = if c == b'[' {
            self.read_bracket()?
        } else {
            let (z, aromatic, len) = match (c, self.peek_at(1)) {
                (b'C', Some(b'l')) => (17, false, 2),
                (b'B', Some(b'r')) => (35, false, 2),
                (b'B', _) => (5, false, 1),
                (b'C', _) => (6, false, 1),
                (b'N', _) => (7, false, 1),
                (b'O', _) => (8, false, 1),
                (b'P', _) => (15, false, 1),
                (b'S', _) => (16, false, 1),
                (b'F', _) => (9, false, 1),
                (b'I', _) => (53, false, 1),
                (b'b', _) => (5, true, 1),
                (b'c', _) => (6, true, 1),
                (b'n', _) => (7, true, 1),
                (b'o', _) => (8, true, 1),
                (b'p', _) => (15, true, 1),
                (b's', _) => (16, true, 1),
                _ if c.is_ascii_alphabetic() || c == b'*' => {
                    let sym = (c as char).to_string();
                    return Err(SmilesError::UnknownElement { symbol: sym, position: start });
                }
                _ => return Err(SmilesError::syntax(start, format!("unexpected character '{}'", c as char))),
            };
            self.pos += len;
            Atom {
                index: 0,
                atomic_number: z,
                charge: 0,
                isotope: None,
                aromatic,
                explicit_h: 0,
                implicit_h: 0,
                map_number: None,
                in_ring: false,
                bracket: false,
                chirality: None,
            }
        };
        self.atoms.push(RawAtom { atom, position: start });
        Ok(self.atoms.len() - 1)
    }

    fn read_number(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.text[start..self.pos]).ok()?.parse().ok()
    }

    fn read_bracket(&mut self) -> Result<Atom, SmilesError> {
        let open = self.pos;
        self.pos += 1;
        let isotope = self.read_number().map(|n| n as u16);

        let sym_start = self.pos;
        let (z, aromatic) = self.read_bracket_symbol()?;

        let mut chirality = None;
        if self.peek() == Some(b'@') {
            let cs = self.pos;
            self.pos += 1;
            if self.peek() == Some(b'@') {
                self.pos += 1;
            } else if matches!(
                self.text.get(self.pos..self.pos + 2),
                Some(b"TH" | b"AL" | b"SP" | b"TB" | b"OH")
            ) {
                self.pos += 2;
                self.read_number();
            }
            chirality = Some(String::from_utf8_lossy(&self.text[cs..self.pos]).into_owned());
        }

        let mut explicit_h = 0u8;
        if self.peek() == Some(b'H') {
            self.pos += 1;
            explicit_h = self.read_number().unwrap_or(1) as u8;
        }

        let mut charge: i32 = 0;
        if let Some(sign @ (b'+' | b'-')) = self.peek() {
            let unit = if sign == b'+' { 1 } else { -1 };
            self.pos += 1;
            if let Some(n) = self.read_number() {
                charge = unit * n as i32;
            } else {
                charge = unit;
                while self.peek() == Some(sign) {
                    self.pos += 1;
                    charge += unit;
                }
            }
            if charge.abs() > 15 {
                return Err(SmilesError::syntax(sym_start, "charge out of range"));
            }
        }

        let mut map_number = None;
        if self.peek() == Some(b':') {
            self.pos += 1;
            match self.read_number() {
                Some(n) => map_number = (n > 0).then_some(n),
                None => return Err(SmilesError::syntax(self.pos, "atom class must be a number")),
            }
        }

        if self.peek() != Some(b']') {
            return Err(SmilesError::syntax(self.pos, "expected ']'"));
        }
        self.pos += 1;
        if self.pos - open < 3 {
            return Err(SmilesError::syntax(open, "empty bracket atom"));
        }
        Ok(Atom {
            index: 0,
            atomic_number: z,
            charge: charge as i8,
            isotope,
            aromatic,
            explicit_h,
            implicit_h: 0,
            map_number,
            in_ring: false,
            bracket: true,
            chirality,
        })
    }

    fn read_bracket_symbol(&mut self) -> Result<(u8, bool), SmilesError> {
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Err(SmilesError::syntax(start, "unterminated bracket atom"));
        };
        if c.is_ascii_lowercase() {
            let two = self.text.get(start..start + 2);
            if matches!(two, Some(b"se") | Some(b"as")) {
                self.pos += 2;
                let z = if two == Some(b"se") { element::SELENIUM } else { element::ARSENIC };
                return Ok((z, true));
            }
            let z = match c {
                b'b' => element::BORON,
                b'c' => element::CARBON,
                b'n' => element::NITROGEN,
                b'o' => element::OXYGEN,
                b'p' => element::PHOSPHORUS,
                b's' => element::SULFUR,
                _ => {
                    return Err(SmilesError::UnknownElement {
                        symbol: (c as char).to_string(),
                        position: start,
                    })
                }
            };
            self.pos += 1;
            return Ok((z, true));
        }
        if !c.is_ascii_uppercase() {
            return Err(SmilesError::UnknownElement {
                symbol: (c as char).to_string(),
                position: start,
            });
        }
        // Two-letter symbols win when they exist.
        if let Some(&next) = self.text.get(start + 1) {
            if next.is_ascii_lowercase() {
                let sym = std::str::from_utf8(&self.text[start..start + 2]).unwrap_or("");
                if let Some(z) = atomic_number(sym) {
                    self.pos += 2;
                    return Ok((z, false));
                }
            }
        }
        let sym = (c as char).to_string();
        match atomic_number(&sym) {
            Some(z) => {
                self.pos += 1;
                Ok((z, false))
            }
            None => Err(SmilesError::UnknownElement { symbol: sym, position: start }),
        }
    }

    fn build(self) -> Result<Molecule, SmilesError> {
        let n = self.atoms.len();
        let positions: Vec<usize> = self.atoms.iter().map(|a| a.position).collect();
        let mut atoms: Vec<Atom> = self.atoms.into_iter().map(|r| r.atom).collect();

        let mut bonds: Vec<Bond> = self
            .bonds
            .iter()
            .map(|rb| {
                let order = match rb.symbol {
                    Some(s) => s.order(),
                    None if atoms[rb.begin].aromatic && atoms[rb.end].aromatic => BondOrder::Aromatic,
                    None => BondOrder::Single,
                };
                Bond {
                    begin: rb.begin,
                    end: rb.end,
                    order,
                    kekule: order,
                    in_ring: false,
                    stereo: rb.symbol.and_then(BondSymbol::stereo),
                }
            })
            .collect();

        // Bond-order sum counting aromatic bonds as one.
        let mut sigma = vec![0u32; n];
        for b in &bonds {
            sigma[b.begin] += b.order.valence();
            sigma[b.end] += b.order.valence();
        }
        let needs_pi: Vec<bool> = (0..n)
            .map(|i| {
                let a = &atoms[i];
                if !a.aromatic || !bonds.iter().any(|b| (b.begin == i || b.end == i) && b.order == BondOrder::Aromatic) {
                    return false;
                }
                if a.bracket {
                    let total = sigma[i] + a.explicit_h as u32;
                    match charged_valences(a.atomic_number, a.charge) {
                        Some(vals) => vals.iter().any(|&v| v == total + 1) && !vals.contains(&total),
                        None => false,
                    }
                } else {
                    match default_valence(a.atomic_number, sigma[i]) {
                        Some(v) => sigma[i] < v,
                        None => false,
                    }
                }
            })
            .collect();

        let aromatic_edges: Vec<(usize, usize, usize)> = bonds
            .iter()
            .enumerate()
            .filter(|(_, b)| b.order == BondOrder::Aromatic)
            .map(|(i, b)| (b.begin, b.end, i))
            .collect();
        if !aromatic_edges.is_empty() {
            let doubles = kekule::assign_double_bonds(n, &needs_pi, &aromatic_edges)
                .map_err(|atom| SmilesError::Kekulize { atom, position: positions[atom] })?;
            for &(_, _, bi) in &aromatic_edges {
                bonds[bi].kekule = BondOrder::Single;
                bonds[bi].order = BondOrder::Single;
            }
            for bi in doubles {
                bonds[bi].kekule = BondOrder::Double;
                bonds[bi].order = BondOrder::Double;
            }
        }

        // Hydrogens and valence limits on the localised structure.
        let mut bond_sum = vec![0u32; n];
        for b in &bonds {
            bond_sum[b.begin] += b.kekule.valence();
            bond_sum[b.end] += b.kekule.valence();
        }
        for (i, a) in atoms.iter_mut().enumerate() {
            let violation = || SmilesError::Valence {
                atom: i,
                symbol: element::symbol(a.atomic_number).to_string(),
                position: positions[i],
            };
            if a.bracket {
                if let Some(vals) = charged_valences(a.atomic_number, a.charge) {
                    let max = vals.iter().copied().max().unwrap_or(0);
                    if bond_sum[i] + a.explicit_h as u32 > max {
                        return Err(violation());
                    }
                }
            } else {
                let v = default_valence(a.atomic_number, bond_sum[i]).ok_or_else(violation)?;
                a.implicit_h = (v - bond_sum[i]) as u8;
            }
            a.aromatic = false;
        }

        let mut mol = Molecule::assemble(atoms, bonds);
        aromatic::perceive(&mut mol);
        Ok(mol)
    }
}
