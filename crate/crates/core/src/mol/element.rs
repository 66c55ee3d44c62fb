//! Periodic table lookup and the valence model used for implicit hydrogens.

const SYMBOLS: [&str; 118] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In",
    "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb",
    "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl",
    "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np", "Pu", "Am", "Cm", "Bk",
    "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh",
    "Fl", "Mc", "Lv", "Ts", "Og",
];

pub const HYDROGEN: u8 = 1;
pub const BORON: u8 = 5;
pub const CARBON: u8 = 6;
pub const NITROGEN: u8 = 7;
pub const OXYGEN: u8 = 8;
pub const PHOSPHORUS: u8 = 15;
pub const SULFUR: u8 = 16;
pub const SELENIUM: u8 = 34;
pub const ARSENIC: u8 = 33;

/// Element symbol for an atomic number in 1..=118.
pub fn symbol(atomic_number: u8) -> &'static str {
    SYMBOLS[atomic_number as usize - 1]
}

/// Atomic number for a properly capitalised element symbol.
pub fn atomic_number(symbol: &str) -> Option<u8> {
    SYMBOLS
        .iter()
        .position(|s| *s == symbol)
        .map(|i| (i + 1) as u8)
}

/// Standard valences of the organic subset, ascending.
pub fn organic_valences(atomic_number: u8) -> Option<&'static [u8]> {
    match atomic_number {
        5 => Some(&[3]),
        6 => Some(&[4]),
        7 | 15 => Some(&[3, 5]),
        8 => Some(&[2]),
        16 => Some(&[2, 4, 6]),
        9 | 17 | 35 | 53 => Some(&[1]),
        _ => None,
    }
}

/// True when the element may appear outside brackets.
pub fn is_organic_subset(atomic_number: u8) -> bool {
    organic_valences(atomic_number).is_some()
}

/// Elements that have a lowercase aromatic spelling.
pub fn aromatic_capable(atomic_number: u8) -> bool {
    matches!(
        atomic_number,
        BORON | CARBON | NITROGEN | OXYGEN | PHOSPHORUS | SULFUR | ARSENIC | SELENIUM
    )
}

/// Lowest standard valence that can hold `bond_sum`, or `None` past the maximum.
pub fn default_valence(atomic_number: u8, bond_sum: u32) -> Option<u32> {
    organic_valences(atomic_number)?
        .iter()
        .map(|&v| v as u32)
        .find(|&v| v >= bond_sum)
}

/// Valences an atom with a formal charge may reach, derived from the
/// isoelectronic neutral element (N+ behaves like C, O- like F, ...).
pub fn charged_valences(atomic_number: u8, charge: i8) -> Option<Vec<u32>> {
    if charge == 0 {
        return organic_valences(atomic_number).map(|v| v.iter().map(|&x| x as u32).collect());
    }
    let base = organic_valences(atomic_number)?;
    let group_shift = match atomic_number {
        // The lighter elements lose hypervalence once charged.
        5..=9 => {
            let electrons = atomic_number as i32 - charge as i32;
            let v = match electrons {
                4 => 2,
                5 => 3,
                6 => 4,
                7 => 3,
                8 => 2,
                9 => 1,
                10 => 0,
                _ => return None,
            };
            return Some(vec![v]);
        }
        _ => charge as i32,
    };
    Some(
        base.iter()
            .filter_map(|&v| {
                let shifted = v as i32 + group_shift;
                (shifted >= 0).then_some(shifted as u32)
            })
            .collect(),
    )
}
