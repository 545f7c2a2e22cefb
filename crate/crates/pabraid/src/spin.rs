//! `Z/2` homology of hyperelliptic mapping classes and membership in spin
//! mapping class groups.
//!
//! Vectors of `H₁(Σ_g; Z/2)` are bitmasks in the basis `x₁, y₁, …, x_g, y_g`
//! (bit `2i` is `x_{i+1}`, bit `2i+1` is `y_{i+1}`). The twist `t_j` about the
//! chain curve `C_j` acts by the transvection `v ↦ v + (v, C_j) C_j`.
//!
//! Chain classes used here:
//!
//! ```text
//! C_1 = x_1,  C_2k = y_k,  C_2k+1 = x_k + x_k+1 (k < g),  C_2g+1 = x_g
//! ```
//!
//! With `q₁(x₁) = q₁(y₁) = 1` this gives `q₁(C₂) = q₁(C₃) = 1` and
//! `q₁(C_j) = 0` for `j ≥ 4`, so every generator membership required of the
//! odd form holds; `q₀` vanishes on all chain classes.

use alloc::vec::Vec;

use crate::braid::BraidWord;

/// Largest genus representable in a bitmask vector.
pub const MAX_GENUS: usize = 64;

/// Errors for the spin module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpinError {
    /// Genus must be between 1 and [`MAX_GENUS`].
    #[error("genus {0} is out of range 1..=64")]
    BadGenus(usize),
    /// Twist indices run over `1..=2g+1`.
    #[error("twist index {index} out of range for genus {genus}")]
    BadIndex {
        /// Offending letter.
        index: i32,
        /// Genus.
        genus: usize,
    },
    /// Disk braids lift from odd degree, spherical braids from even degree.
    #[error("a {kind} braid with {degree} strands has no hyperelliptic lift")]
    WrongParity {
        /// "disk" or "spherical".
        kind: &'static str,
        /// Strand count.
        degree: usize,
    },
}

/// A vector of `H₁(Σ_g; Z/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Z2Vector {
    genus: usize,
    bits: u128,
}

impl Z2Vector {
    /// The zero vector.
    pub fn zero(genus: usize) -> Result<Self, SpinError> {
        check_genus(genus)?;
        Ok(Self { genus, bits: 0 })
    }

    /// `x_i` (1-based).
    pub fn x(genus: usize, i: usize) -> Self {
        Self { genus, bits: 1u128 << (2 * (i - 1)) }
    }

    /// `y_i` (1-based).
    pub fn y(genus: usize, i: usize) -> Self {
        Self { genus, bits: 1u128 << (2 * (i - 1) + 1) }
    }

    /// The basis vector with bit index `k` (`0..2g`).
    pub fn basis(genus: usize, k: usize) -> Self {
        Self { genus, bits: 1u128 << k }
    }

    /// Raw bits.
    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Vector from raw bits (masked to `2g` bits).
    pub fn from_bits(genus: usize, bits: u128) -> Self {
        Self { genus, bits: bits & mask(genus) }
    }

    /// Genus.
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Sum over `Z/2`.
    pub fn add(&self, other: &Self) -> Self {
        Self { genus: self.genus, bits: self.bits ^ other.bits }
    }

    /// The intersection pairing `(v, w)₂`.
    pub fn pairing(&self, other: &Self) -> bool {
        (self.bits & swap_xy(other.bits)).count_ones() % 2 == 1
    }
}

const X_BITS: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

fn swap_xy(bits: u128) -> u128 {
    ((bits & X_BITS) << 1) | ((bits >> 1) & X_BITS)
}

fn mask(genus: usize) -> u128 {
    if genus >= 64 { u128::MAX } else { (1u128 << (2 * genus)) - 1 }
}

fn check_genus(genus: usize) -> Result<(), SpinError> {
    if genus == 0 || genus > MAX_GENUS {
        return Err(SpinError::BadGenus(genus));
    }
    Ok(())
}

/// A `Z/2` quadratic form, stored by its values on the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticForm {
    genus: usize,
    values: u128,
}

impl QuadraticForm {
    /// The even form `q₀`, zero on every basis vector.
    pub fn even(genus: usize) -> Result<Self, SpinError> {
        check_genus(genus)?;
        Ok(Self { genus, values: 0 })
    }

    /// The odd form `q₁`: 1 on `x₁` and `y₁`, 0 elsewhere.
    pub fn odd(genus: usize) -> Result<Self, SpinError> {
        check_genus(genus)?;
        Ok(Self { genus, values: 0b11 })
    }

    /// A form with the given basis values.
    pub fn from_basis_values(genus: usize, values: u128) -> Result<Self, SpinError> {
        check_genus(genus)?;
        Ok(Self { genus, values: values & mask(genus) })
    }

    /// `q(v)`, extended from the basis by `q(v+w) = q(v) + q(w) + (v,w)₂`.
    pub fn eval(&self, v: &Z2Vector) -> bool {
        let linear = (v.bits & self.values).count_ones();
        // each symplectic pair (x_i, y_i) inside v contributes one pairing
        let pairs = (v.bits & (v.bits >> 1) & X_BITS).count_ones();
        (linear + pairs) % 2 == 1
    }

    /// Arf invariant: the majority value of `q`.
    pub fn arf(&self) -> bool {
        (0..self.genus).filter(|&i| self.values >> (2 * i) & 1 == 1 && self.values >> (2 * i + 1) & 1 == 1).count() % 2 == 1
    }
}

/// Homology classes `[C₁], …, [C_{2g+1}]` of the chain curves.
pub fn chain_classes(genus: usize) -> Result<Vec<Z2Vector>, SpinError> {
    check_genus(genus)?;
    let mut out = Vec::with_capacity(2 * genus + 1);
    out.push(Z2Vector::x(genus, 1));
    for k in 1..=genus {
        out.push(Z2Vector::y(genus, k));
        if k < genus {
            out.push(Z2Vector::x(genus, k).add(&Z2Vector::x(genus, k + 1)));
        } else {
            out.push(Z2Vector::x(genus, k));
        }
    }
    Ok(out)
}

/// A word in the twists `t₁, …, t_{2g+1}` (signed indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingWord {
    genus: usize,
    letters: Vec<i32>,
}

impl MappingWord {
    /// Validated word.
    pub fn new(genus: usize, letters: Vec<i32>) -> Result<Self, SpinError> {
        check_genus(genus)?;
        if let Some(&index) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > 2 * genus + 1) {
            return Err(SpinError::BadIndex { index, genus });
        }
        Ok(Self { genus, letters })
    }

    /// Genus.
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Letters.
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Concatenation (same genus assumed).
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { genus: self.genus.max(other.genus), letters }
    }
}

impl core::fmt::Display for MappingWord {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "t{l}")?;
            } else {
                write!(f, "t{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// A `2g × 2g` matrix over `Z/2`, stored by columns (images of the basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    genus: usize,
    columns: Vec<u128>,
}

impl BitMatrix {
    /// Identity.
    pub fn identity(genus: usize) -> Self {
        Self { genus, columns: (0..2 * genus).map(|k| 1u128 << k).collect() }
    }

    /// Image of a vector.
    pub fn apply(&self, v: &Z2Vector) -> Z2Vector {
        let mut out = 0u128;
        for (k, col) in self.columns.iter().enumerate() {
            if v.bits >> k & 1 == 1 {
                out ^= col;
            }
        }
        Z2Vector { genus: self.genus, bits: out }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let columns = other.columns.iter().map(|&c| self.apply(&Z2Vector { genus: self.genus, bits: c }).bits).collect();
        Self { genus: self.genus, columns }
    }

    /// Whether the matrix preserves the intersection pairing.
    pub fn is_symplectic(&self) -> bool {
        let n = self.columns.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (ei, ej) = (Z2Vector::basis(self.genus, i), Z2Vector::basis(self.genus, j));
                self.apply(&ei).pairing(&self.apply(&ej)) == ei.pairing(&ej)
            })
        })
    }

    /// Columns as raw bits.
    pub fn columns(&self) -> &[u128] {
        &self.columns
    }
}

fn transvection(genus: usize, c: &Z2Vector) -> BitMatrix {
    let columns = (0..2 * genus)
        .map(|k| {
            let e = Z2Vector::basis(genus, k);
            if e.pairing(c) { e.add(c).bits } else { e.bits }
        })
        .collect();
    BitMatrix { genus, columns }
}

/// Action on `H₁(Σ_g; Z/2)`: the product of transvections in word order, so
/// that the action of `w₁w₂` is the action of `w₁` composed with that of
/// `w₂`.
pub fn homology_action(w: &MappingWord) -> BitMatrix {
    let chain = chain_classes(w.genus).expect("genus validated");
    let twists: Vec<BitMatrix> = chain.iter().map(|c| transvection(w.genus, c)).collect();
    w.letters
        .iter()
        .fold(BitMatrix::identity(w.genus), |acc, &l| acc.compose(&twists[l.unsigned_abs() as usize - 1]))
}

/// `q ∘ φ_* = q`, checked on the basis (enough since `φ_*` is symplectic
/// and `q` obeys the polarisation rule).
pub fn preserves_form(w: &MappingWord, q: &QuadraticForm) -> bool {
    let m = homology_action(w);
    (0..2 * w.genus).all(|k| {
        let e = Z2Vector::basis(w.genus, k);
        q.eval(&m.apply(&e)) == q.eval(&e)
    })
}

/// Lift through the hyperelliptic cover: `σ_j^{±1} ↦ t_j^{±1}`. A disk braid
/// needs `2g + 1` strands, a spherical braid `2g + 2`.
pub fn lift_braid(b: &BraidWord) -> Result<MappingWord, SpinError> {
    let n = b.degree();
    let genus = match (b.is_spherical(), n % 2) {
        (false, 1) => (n - 1) / 2,
        (true, 0) => (n - 2) / 2,
        (spherical, _) => {
            return Err(SpinError::WrongParity { kind: if spherical { "spherical" } else { "disk" }, degree: n });
        }
    };
    MappingWord::new(genus, b.letters().to_vec())
}

/// Lift into a chosen genus, which only needs room for the letters used.
pub fn lift_braid_with_genus(b: &BraidWord, genus: usize) -> Result<MappingWord, SpinError> {
    MappingWord::new(genus, b.letters().to_vec())
}
