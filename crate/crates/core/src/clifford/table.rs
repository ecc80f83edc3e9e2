//! Blade basis and geometric-product sign table for Cl(1,3).
//!
//! Blades are stored as 4-bit masks (bit `i` set means `γ_i` is a factor, with
//! factors in ascending index order). The canonical coefficient layout is
//!
//! ```text
//! 0: 1
//! 1..=4:   γ0 γ1 γ2 γ3
//! 5..=10:  γ01 γ02 γ03 γ12 γ13 γ23
//! 11..=14: γ012 γ013 γ023 γ123
//! 15:      γ0123 (= γ5)
//! ```
//!
//! The table is generated at compile time from `γ_μ γ_ν + γ_ν γ_μ = 2 η_μν`
//! with `η = diag(+1, -1, -1, -1)`.

/// Number of blades in Cl(1,3).
pub const DIM: usize = 16;

/// Bitmask of each canonical blade.
pub const BLADE_MASKS: [u8; DIM] = [
    0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100,
    0b0111, 0b1011, 0b1101, 0b1110, 0b1111,
];

/// Human readable blade names, in canonical order.
pub const BLADE_NAMES: [&str; DIM] = [
    "1", "g0", "g1", "g2", "g3", "g01", "g02", "g03", "g12", "g13", "g23", "g012", "g013",
    "g023", "g123", "g0123",
];

/// Grade of each canonical blade.
pub const GRADES: [u8; DIM] = {
    let mut g = [0u8; DIM];
    let mut i = 0;
    while i < DIM {
        g[i] = BLADE_MASKS[i].count_ones() as u8;
        i += 1;
    }
    g
};

/// Metric signature: square of each basis vector.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Canonical index of the blade with the given bitmask.
pub const MASK_TO_INDEX: [usize; DIM] = {
    let mut t = [0usize; DIM];
    let mut i = 0;
    while i < DIM {
        t[BLADE_MASKS[i] as usize] = i;
        i += 1;
    }
    t
};

/// Sign of `blade(a) * blade(b)` relative to the canonical blade `a ^ b`.
const fn mask_product_sign(a: u8, b: u8) -> i8 {
    // Count transpositions needed to bring the concatenated factor list into
    // ascending order: every factor of `b` has to move past each higher factor of `a`.
    let mut swaps = 0u32;
    let mut bit = 0;
    while bit < 4 {
        if b & (1 << bit) != 0 {
            let higher = a & !((1u8 << (bit + 1)) - 1);
            swaps += higher.count_ones();
        }
        bit += 1;
    }
    let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
    // Repeated factors contract with the metric; only the spatial ones flip sign.
    let common = a & b;
    let mut bit = 1;
    while bit < 4 {
        if common & (1 << bit) != 0 {
            sign = -sign;
        }
        bit += 1;
    }
    sign
}

/// Product table entry: `blade[i] * blade[j] = sign * blade[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductEntry {
    pub index: u8,
    pub sign: i8,
}

/// Full 16 x 16 product table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTable {
    pub entries: [[ProductEntry; DIM]; DIM],
}

/// The product table derived from the generating relations.
pub const PRODUCT_TABLE: SignTable = {
    let mut entries = [[ProductEntry { index: 0, sign: 1 }; DIM]; DIM];
    let mut i = 0;
    while i < DIM {
        let mut j = 0;
        while j < DIM {
            let a = BLADE_MASKS[i];
            let b = BLADE_MASKS[j];
            entries[i][j] = ProductEntry {
                index: MASK_TO_INDEX[(a ^ b) as usize] as u8,
                sign: mask_product_sign(a, b),
            };
            j += 1;
        }
        i += 1;
    }
    SignTable { entries }
};

impl SignTable {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ProductEntry {
        self.entries[i][j]
    }

    /// Square of blade `i` (always `±1`).
    pub fn square_sign(&self, i: usize) -> i8 {
        self.entries[i][i].sign
    }

    /// Copy of the table with one entry's sign flipped. Used to check that the
    /// oracle comparison actually detects sign errors.
    pub fn with_flipped_sign(&self, i: usize, j: usize) -> SignTable {
        let mut t = self.clone();
        t.entries[i][j].sign = -t.entries[i][j].sign;
        t
    }
}

/// Even-grade blade indices, in the order used to serialise spinors.
pub const EVEN_BLADES: [usize; 8] = [0, 5, 6, 7, 8, 9, 10, 15];

/// Bivector blade indices in canonical order: γ01 γ02 γ03 γ12 γ13 γ23.
pub const BIVECTOR_BLADES: [usize; 6] = [5, 6, 7, 8, 9, 10];

/// Index pairs `(μ, ν)` of the bivector blades.
pub const BIVECTOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_vectors_square_to_metric() {
        for mu in 0..4 {
            let e = PRODUCT_TABLE.get(mu + 1, mu + 1);
            assert_eq!(e.index, 0);
            assert_eq!(e.sign as f64, METRIC[mu]);
        }
    }

    #[test]
    fn orthogonal_vectors_anticommute() {
        // γ2 γ1 = -γ12
        let e = PRODUCT_TABLE.get(3, 2);
        assert_eq!(BLADE_NAMES[e.index as usize], "g12");
        assert_eq!(e.sign, -1);
        let e = PRODUCT_TABLE.get(2, 3);
        assert_eq!(e.sign, 1);
    }

    #[test]
    fn grades_and_names_line_up() {
        for (i, name) in BLADE_NAMES.iter().enumerate() {
            let expected = if i == 0 { 0 } else { name.len() - 1 };
            assert_eq!(GRADES[i] as usize, expected, "{name}");
        }
    }

    #[test]
    fn flipped_table_differs_in_one_place() {
        let t = PRODUCT_TABLE.with_flipped_sign(8, 8);
        let diffs = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |j| (i, j)))
            .filter(|&(i, j)| t.get(i, j) != PRODUCT_TABLE.get(i, j))
            .count();
        assert_eq!(diffs, 1);
    }
}
