//! Standard forms of increasing braids and the twist machinery that builds
//! new monodromies from them.
//!
//! A standard form of degree `d` with blocks `w₁, …, w_u` (words avoiding
//! `σ_{d−1}`) represents `(w₁σ_{d−1}²)⋯(w_uσ_{d−1}²)`, a `d`-increasing braid
//! with intersection number `u`. Both twist moves keep this shape:
//!
//! * a full twist appends `p(d−1)` copies of the block `σ₁⋯σ_{d−2}`, since
//!   `Δ² = ρ^{d−1}`;
//! * a disk twist raises the degree to `d + pu` and extends every block by
//!   `σ_{d−1}σ_d⋯σ_{d'−2}`.
//!
//! A twist program `[p₁, …, p_ℓ]` alternates the two moves, starting with a
//! disk twist, and odd continued fractions translate a cone class into such
//! a program.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::braid::{ascending, descending, BraidError, BraidWord};
use crate::dynnikov::{braids_equal, entropy_estimate, EntropyError, EstimatorConfig};
use crate::numeric::gcd;

/// Errors for standard forms, programs and continued fractions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProgramError {
    /// Standard forms need degree at least 3.
    #[error("standard forms need degree at least 3, got {0}")]
    DegreeTooSmall(usize),
    /// A standard form needs at least one block.
    #[error("a standard form needs at least one block")]
    NoBlocks,
    /// A block letter uses `σ_{d−1}` or lies outside the group.
    #[error("block {block} uses letter {letter}, but blocks of a degree-{degree} form only use indices 1..={}", .degree - 2)]
    ForbiddenLetter {
        /// Block index (0-based).
        block: usize,
        /// Offending letter.
        letter: i32,
        /// Degree of the form.
        degree: usize,
    },
    /// Twist steps take a positive parameter.
    #[error("twist parameter must be at least 1, got {0}")]
    NonPositiveStep(u64),
    /// Programs are nonempty.
    #[error("a twist program needs at least one entry")]
    EmptyProgram,
    /// Entries after the first must be positive.
    #[error("entry {position} of the program is 0; only the first entry may vanish")]
    ZeroEntry {
        /// 1-based position.
        position: usize,
    },
    /// Fibered classes of the cone need `x ≥ 1` and `y ≥ 0`.
    #[error("class ({x}, {y}) is not an interior class")]
    NotInterior {
        /// First coordinate.
        x: i64,
        /// Second coordinate.
        y: i64,
    },
    /// The class is not primitive.
    #[error("class ({x}, {y}) is not primitive")]
    NotCoprime {
        /// First coordinate.
        x: i64,
        /// Second coordinate.
        y: i64,
    },
    /// The program is not the odd expansion of any class.
    #[error("program {0} is not the odd continued fraction of a class")]
    NotRealizable(String),
    /// Integer overflow while evaluating a program.
    #[error("arithmetic overflow while evaluating a program")]
    Overflow,
    /// The serialized blocks could not be parsed.
    #[error("cannot parse blocks: {0}")]
    Parse(String),
    /// A braid-level error.
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// One entry of a standard form's provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "step", rename_all = "snake_case"))]
pub enum Step {
    /// The form was entered directly with this degree and block count.
    Seed {
        /// Degree of the seed.
        degree: usize,
        /// Block count of the seed.
        blocks: usize,
    },
    /// A disk twist with parameter `p`.
    DiskTwist {
        /// Twist parameter.
        p: u64,
    },
    /// `p` full twists.
    FullTwist {
        /// Number of full twists.
        p: u64,
    },
}

/// Block decomposition of a `d`-increasing braid.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawStandardForm"))]
pub struct StandardForm {
    degree: usize,
    blocks: Vec<Vec<i32>>,
    provenance: Vec<Step>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawStandardForm {
    degree: usize,
    blocks: Vec<Vec<i32>>,
    #[serde(default)]
    provenance: Vec<Step>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawStandardForm> for StandardForm {
    type Error = ProgramError;

    fn try_from(raw: RawStandardForm) -> Result<Self, Self::Error> {
        let mut form = StandardForm::new(raw.degree, raw.blocks)?;
        if !raw.provenance.is_empty() {
            form.provenance = raw.provenance;
        }
        Ok(form)
    }
}

/// Data of the factorisation `(ν₁ρ)⋯(ν_{u−1}ρ)(ν_uρ^m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Degree of the braid.
    pub degree: usize,
    /// `ν_j = w_j (σ₁⋯σ_{d−2})⁻¹`, one per seed block.
    pub nus: Vec<BraidWord>,
    /// Exponent of `ρ` in the last factor.
    pub m: u64,
}

impl Factorization {
    /// The literal word `(ν₁ρ)⋯(ν_uρ^m)`.
    pub fn to_braid_word(&self) -> BraidWord {
        let d = self.degree as i32;
        let mut rho = ascending(1, d - 1);
        rho.push(d - 1);
        let mut letters = Vec::new();
        let last = self.nus.len() - 1;
        for (j, nu) in self.nus.iter().enumerate() {
            letters.extend_from_slice(nu.letters());
            let reps = if j == last { self.m } else { 1 };
            for _ in 0..reps {
                letters.extend_from_slice(&rho);
            }
        }
        BraidWord::new(self.degree, letters).expect("factor letters stay in range")
    }
}

/// Closed-form parameters of a constructed braid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosedForm {
    /// Block count of the seed.
    pub seed_blocks: usize,
    /// Exponent `m` of the last factor.
    pub m: u64,
    /// Final degree.
    pub degree: usize,
}

impl StandardForm {
    /// A seed form from its degree and blocks.
    pub fn new(degree: usize, blocks: Vec<Vec<i32>>) -> Result<Self, ProgramError> {
        if degree < 3 {
            return Err(ProgramError::DegreeTooSmall(degree));
        }
        if blocks.is_empty() {
            return Err(ProgramError::NoBlocks);
        }
        for (block, letters) in blocks.iter().enumerate() {
            if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > degree - 2) {
                return Err(ProgramError::ForbiddenLetter { block, letter, degree });
            }
        }
        let provenance = vec![Step::Seed { degree, blocks: blocks.len() }];
        Ok(Self { degree, blocks, provenance })
    }

    /// Parses blocks written as `"-1 | -1"` (`|` separates blocks; an empty
    /// block is written as nothing or `e`).
    pub fn parse_blocks(degree: usize, text: &str) -> Result<Self, ProgramError> {
        let blocks = text
            .split('|')
            .map(|chunk| {
                chunk
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty() && *t != "e")
                    .map(|t| t.parse::<i32>().map_err(|_| ProgramError::Parse(alloc::format!("bad letter `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, blocks)
    }

    /// The blocks as text, inverse of [`StandardForm::parse_blocks`].
    pub fn blocks_text(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| if b.is_empty() { "e".into() } else { b.iter().map(|l| alloc::format!("{l}")).collect::<Vec<_>>().join(" ") })
            .collect();
        parts.join(" | ")
    }

    /// Degree `d`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The block words, as letter lists.
    pub fn blocks(&self) -> &[Vec<i32>] {
        &self.blocks
    }

    /// Block count, which is the intersection number `u`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Steps applied so far, starting with the seed.
    pub fn provenance(&self) -> &[Step] {
        &self.provenance
    }

    /// Degree of the seed this form was built from.
    pub fn seed_degree(&self) -> usize {
        match self.provenance.first() {
            Some(Step::Seed { degree, .. }) => *degree,
            _ => self.degree,
        }
    }

    /// Block count of the seed this form was built from.
    pub fn seed_blocks(&self) -> usize {
        match self.provenance.first() {
            Some(Step::Seed { blocks, .. }) => *blocks,
            _ => self.blocks.len(),
        }
    }

    /// The same braid, treated as a fresh seed.
    pub fn reseeded(&self) -> Self {
        Self::new(self.degree, self.blocks.clone()).expect("invariants already hold")
    }

    /// The braid `(w₁σ_{d−1}²)⋯(w_uσ_{d−1}²)`.
    pub fn to_braid_word(&self) -> BraidWord {
        let top = self.degree as i32 - 1;
        let mut letters = Vec::new();
        for block in &self.blocks {
            letters.extend_from_slice(block);
            letters.extend_from_slice(&[top, top]);
        }
        BraidWord::new(self.degree, letters).expect("blocks respect the degree")
    }

    /// Multiplies by `Δ^{2p}`: appends `p(d−1)` blocks `σ₁⋯σ_{d−2}`.
    pub fn full_twist_step(&self, p: u64) -> Result<Self, ProgramError> {
        if p == 0 {
            return Err(ProgramError::NonPositiveStep(p));
        }
        let delta = ascending(1, self.degree as i32 - 2);
        let mut out = self.clone();
        let extra = p as usize * (self.degree - 1);
        out.blocks.extend(core::iter::repeat_n(delta, extra));
        out.provenance.push(Step::FullTwist { p });
        Ok(out)
    }

    /// Disk twist with parameter `p`: degree `d + pu`, every block extended
    /// by `σ_{d−1}⋯σ_{d'−2}`.
    pub fn disk_twist_step(&self, p: u64) -> Result<Self, ProgramError> {
        if p == 0 {
            return Err(ProgramError::NonPositiveStep(p));
        }
        let d = self.degree;
        let new_degree = d + p as usize * self.blocks.len();
        let tail = ascending(d as i32 - 1, new_degree as i32 - 2);
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb = b.clone();
                nb.extend_from_slice(&tail);
                nb
            })
            .collect();
        let mut provenance = self.provenance.clone();
        provenance.push(Step::DiskTwist { p });
        Ok(Self { degree: new_degree, blocks, provenance })
    }

    /// Runs a twist program: disk twists at odd positions (`p₁ = 0` does
    /// nothing), full twists at even positions.
    pub fn apply_program(&self, program: &TwistProgram) -> Result<Self, ProgramError> {
        let mut form = self.clone();
        for (idx, &p) in program.entries().iter().enumerate() {
            if idx % 2 == 0 {
                if p > 0 {
                    form = form.disk_twist_step(p)?;
                }
            } else {
                form = form.full_twist_step(p)?;
            }
        }
        Ok(form)
    }

    /// The monodromy of the primitive class `(x, y)`, built from the odd
    /// continued fraction of `y/x`.
    pub fn class_to_braid(&self, x: i64, y: i64) -> Result<Self, ProgramError> {
        self.apply_program(&odd_continued_fraction(x, y)?)
    }

    /// Closed-form parameters: seed block count, last exponent, degree.
    pub fn closed_form(&self) -> ClosedForm {
        let seed_blocks = self.seed_blocks();
        ClosedForm { seed_blocks, m: (self.blocks.len() + 1 - seed_blocks) as u64, degree: self.degree }
    }

    /// The factors `ν_j` and exponent `m` with braid `(ν₁ρ)⋯(ν_uρ^m)`, where
    /// `u` is the seed's block count.
    pub fn decompose_factors(&self) -> Factorization {
        let d = self.degree as i32;
        let delta_inv = descending(d - 2, 1).into_iter().map(|l| -l).collect::<Vec<_>>();
        let closed = self.closed_form();
        let nus = self.blocks[..closed.seed_blocks]
            .iter()
            .map(|b| {
                let mut letters = b.clone();
                letters.extend_from_slice(&delta_inv);
                BraidWord::new(self.degree, letters).expect("factor letters stay in range")
            })
            .collect();
        Factorization { degree: self.degree, nus, m: closed.m }
    }

    /// The braid `γ ∈ B_{n+u}` whose fiber class is the companion disk class
    /// of this form: `γ = κ₀κ₁⋯κ_{u+1}Δ_{n−1}²`.
    pub fn ef_gamma(&self) -> BraidWord {
        let n = self.degree as i32;
        let u = self.blocks.len() as i32;
        let mut letters = descending(n - 1, 1);
        letters.extend(ascending(1, n + u - 1));
        for (j, block) in self.blocks.iter().enumerate() {
            let j = j as i32 + 1;
            letters.extend_from_slice(block);
            if j < u {
                letters.extend(ascending(n - 1, n + u - j - 1));
                letters.extend(descending(n + u - j - 2, n - 1).into_iter().map(|l| -l));
            } else {
                letters.push(n - 1);
            }
        }
        letters.extend(descending(n + u - 1, n).into_iter().map(|l| -l));
        let delta = ascending(1, n - 2);
        for _ in 0..n - 1 {
            letters.extend_from_slice(&delta);
        }
        BraidWord::new((n + u) as usize, letters).expect("γ letters stay in range")
    }

    /// Checks a claimed equality between this form and a raw word through
    /// permutation, exponent sum, the word-problem oracle and entropy.
    pub fn verify_equivalence(&self, word: &BraidWord, config: &EstimatorConfig) -> Result<EquivalenceReport, EntropyError> {
        let mine = self.to_braid_word();
        let same_degree = mine.degree() == word.degree();
        let permutation = same_degree && mine.permutation() == word.permutation();
        let exponent_sum = mine.exponent_sum() == word.exponent_sum();
        let equal_as_braids = same_degree && braids_equal(&mine, word).is_equal();
        let entropy_delta = if same_degree {
            let a = entropy_estimate(&mine, config)?;
            let b = entropy_estimate(word, config)?;
            Some((a.value - b.value).abs())
        } else {
            None
        };
        Ok(EquivalenceReport { permutation, exponent_sum, equal_as_braids, entropy_delta })
    }
}

/// Result of [`StandardForm::verify_equivalence`].
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    /// Permutations agree.
    pub permutation: bool,
    /// Exponent sums agree.
    pub exponent_sum: bool,
    /// The word-problem oracle finds the braids equal.
    pub equal_as_braids: bool,
    /// Difference of entropy estimates, when degrees agree.
    pub entropy_delta: Option<f64>,
}

/// A twist program `[p₁, …, p_ℓ]` with `p₁ ≥ 0` and the rest positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<u64>", into = "Vec<u64>"))]
pub struct TwistProgram {
    entries: Vec<u64>,
}

impl TryFrom<Vec<u64>> for TwistProgram {
    type Error = ProgramError;

    fn try_from(entries: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(entries)
    }
}

impl From<TwistProgram> for Vec<u64> {
    fn from(p: TwistProgram) -> Self {
        p.entries
    }
}

impl TwistProgram {
    /// Validates the positivity constraints.
    pub fn new(entries: Vec<u64>) -> Result<Self, ProgramError> {
        if entries.is_empty() {
            return Err(ProgramError::EmptyProgram);
        }
        if let Some(pos) = entries.iter().skip(1).position(|&p| p == 0) {
            return Err(ProgramError::ZeroEntry { position: pos + 2 });
        }
        Ok(Self { entries })
    }

    /// The entries.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false: programs are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The continued fraction `p₁ + 1/(p₂ + 1/(⋯))` as a reduced fraction
    /// `y/x`, returned as `(x, y)`.
    pub fn evaluate(&self) -> Result<(i64, i64), ProgramError> {
        // fold from the tail: value = num/den
        let mut num: i128 = *self.entries.last().expect("nonempty") as i128;
        let mut den: i128 = 1;
        for &p in self.entries.iter().rev().skip(1) {
            let next = (p as i128).checked_mul(num).and_then(|v| v.checked_add(den)).ok_or(ProgramError::Overflow)?;
            den = num;
            num = next;
        }
        let x = i64::try_from(den).map_err(|_| ProgramError::Overflow)?;
        let y = i64::try_from(num).map_err(|_| ProgramError::Overflow)?;
        let g = gcd(x, y).max(1);
        Ok((x / g, y / g))
    }
}

impl fmt::Display for TwistProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Odd-length continued fraction of `y/x` for a primitive class with
/// `x ≥ 1`, `y ≥ 0`.
///
/// The Euclidean expansion is used as is when its length is odd; otherwise
/// its last entry `p` becomes `p − 1, 1`. The class `(1, 0)` gives `[0]`.
pub fn odd_continued_fraction(x: i64, y: i64) -> Result<TwistProgram, ProgramError> {
    if x < 1 || y < 0 {
        return Err(ProgramError::NotInterior { x, y });
    }
    if gcd(x, y) != 1 {
        return Err(ProgramError::NotCoprime { x, y });
    }
    let mut entries = Vec::new();
    let (mut num, mut den) = (y, x);
    loop {
        entries.push((num / den) as u64);
        let r = num % den;
        if r == 0 {
            break;
        }
        num = den;
        den = r;
    }
    if entries.len() % 2 == 0 {
        let last = entries.pop().expect("nonempty");
        entries.push(last - 1);
        entries.push(1);
    }
    TwistProgram::new(entries)
}
