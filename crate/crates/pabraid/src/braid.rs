//! Braid words in `B_n` and `SB_n`.
//!
//! A letter `j > 0` is the positive crossing `σ_j` and `-j` is its inverse.
//! Strands are numbered `1..=n` from bottom to top. Words are stored exactly
//! as built; [`BraidWord::free_reduced`] is an explicit normalising pass.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Errors raised by braid-word constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    /// A braid needs at least two strands.
    #[error("degree {0} is too small; braids need at least 2 strands")]
    DegreeTooSmall(usize),
    /// A letter is zero or exceeds `degree - 1` in absolute value.
    #[error("letter {letter} is not a generator of the {degree}-strand braid group")]
    InvalidLetter {
        /// Offending letter.
        letter: i32,
        /// Degree of the word.
        degree: usize,
    },
    /// Two words of different degree (or sphericity) were combined.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch {
        /// Degree of the left operand.
        left: usize,
        /// Degree of the right operand.
        right: usize,
    },
    /// One operand is spherical and the other is not.
    #[error("cannot combine a spherical braid with a disk braid")]
    SphericalMismatch,
    /// A generator index outside its allowed range.
    #[error("generator index {index} out of range 2..={degree}")]
    GeneratorIndex {
        /// Requested index.
        index: usize,
        /// Ambient degree.
        degree: usize,
    },
    /// A strand index outside `1..=degree`.
    #[error("strand {strand} out of range 1..={degree}")]
    StrandOutOfRange {
        /// Requested strand.
        strand: usize,
        /// Ambient degree.
        degree: usize,
    },
    /// The operation requires a strand fixed by the permutation.
    #[error("strand {0} is not fixed by the braid permutation")]
    NotFixed(usize),
    /// The text form could not be parsed.
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

/// Named elements of `B_n` built by [`make_generator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GeneratorKind {
    /// `δ_j = σ_1 ⋯ σ_{j-1}`.
    Delta,
    /// `ρ_j = σ_1 ⋯ σ_{j-2} σ_{j-1}^2`.
    Rho,
    /// `Δ_j = δ_j δ_{j-1} ⋯ δ_2`.
    HalfTwist,
    /// `Δ_j^2`, written as `δ_j^j`.
    FullTwist,
}

/// A braid word: a degree, a sphericity flag and a sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawBraidWord"))]
pub struct BraidWord {
    degree: usize,
    spherical: bool,
    letters: Vec<i32>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawBraidWord {
    degree: usize,
    #[serde(default)]
    spherical: bool,
    letters: Vec<i32>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawBraidWord> for BraidWord {
    type Error = BraidError;

    fn try_from(raw: RawBraidWord) -> Result<Self, Self::Error> {
        let word = BraidWord::new(raw.degree, raw.letters)?;
        Ok(if raw.spherical { word.sphericalize() } else { word })
    }
}

impl BraidWord {
    /// Builds a disk braid word, checking every letter.
    pub fn new(degree: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if degree < 2 {
            return Err(BraidError::DegreeTooSmall(degree));
        }
        for &letter in &letters {
            check_letter(letter, degree)?;
        }
        Ok(Self { degree, spherical: false, letters })
    }

    /// Builds a spherical braid word (an element of `SB_n`).
    pub fn new_spherical(degree: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        Ok(Self::new(degree, letters)?.sphericalize())
    }

    /// The empty word in `B_n`.
    pub fn identity(degree: usize) -> Result<Self, BraidError> {
        Self::new(degree, Vec::new())
    }

    /// Number of strands.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Whether the word is read in `SB_n`.
    pub fn is_spherical(&self) -> bool {
        self.spherical
    }

    /// The letters, exactly as stored.
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Word length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Signed letter count.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// True when every letter is a positive crossing.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// The same word viewed in the same group with more strands.
    pub fn with_degree(&self, degree: usize) -> Result<Self, BraidError> {
        let mut word = Self::new(degree, self.letters.clone())?;
        word.spherical = self.spherical;
        Ok(word)
    }

    /// Deletes adjacent `j, -j` pairs until none remain.
    pub fn free_reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { degree: self.degree, spherical: self.spherical, letters: out }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), BraidError> {
        if self.degree != other.degree {
            return Err(BraidError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        if self.spherical != other.spherical {
            return Err(BraidError::SphericalMismatch);
        }
        Ok(())
    }

    /// Literal concatenation `self · other`, without reduction.
    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        self.check_compatible(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { letters, ..self.clone() })
    }

    /// Product `self · other`, freely reduced.
    pub fn compose(&self, other: &Self) -> Result<Self, BraidError> {
        Ok(self.concat(other)?.free_reduced())
    }

    /// Inverse word: reversed order, every sign flipped, freely reduced.
    pub fn invert(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&l| -l).collect();
        Self { letters, ..self.clone() }.free_reduced()
    }

    /// `g · self · g⁻¹`, freely reduced.
    pub fn conjugate(&self, g: &Self) -> Result<Self, BraidError> {
        Ok(g.concat(self)?.concat(&g.invert())?.free_reduced())
    }

    /// `self^k` for `k ≥ 0`, literal.
    pub fn pow(&self, k: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Self { letters, ..self.clone() }
    }

    /// The permutation `π_b`, a homomorphism from words to permutations.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.degree).collect();
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize;
            images.swap(j - 1, j);
        }
        Permutation { images }
    }

    /// `rev`: letter order reversed, signs kept.
    pub fn reversed(&self) -> Self {
        let letters = self.letters.iter().rev().copied().collect();
        Self { letters, ..self.clone() }
    }

    /// `skew`: reversed, then every index `i` replaced by `n - i`.
    pub fn skewed(&self) -> Self {
        let n = self.degree as i32;
        let letters = self.letters.iter().rev().map(|&l| l.signum() * (n - l.abs())).collect();
        Self { letters, ..self.clone() }
    }

    /// `sh`: every index raised by one, in one more strand.
    pub fn shifted(&self) -> Self {
        let letters = self.letters.iter().map(|&l| l + l.signum()).collect();
        Self { degree: self.degree + 1, spherical: self.spherical, letters }
    }

    /// `S(b)`: the same letters read in the spherical braid group.
    pub fn sphericalize(&self) -> Self {
        Self { spherical: true, ..self.clone() }
    }

    /// The disk braid with the same letters.
    pub fn disk_lift(&self) -> Self {
        Self { spherical: false, ..self.clone() }
    }

    fn check_strand(&self, strand: usize) -> Result<(), BraidError> {
        if strand == 0 || strand > self.degree {
            return Err(BraidError::StrandOutOfRange { strand, degree: self.degree });
        }
        Ok(())
    }

    /// Deletes the fixed strand `strand`, giving a braid with `n - 1` strands.
    ///
    /// The strand's position is tracked along the word; letters crossing it
    /// are dropped and letters entirely above it move down by one.
    pub fn remove_strand(&self, strand: usize) -> Result<Self, BraidError> {
        self.check_strand(strand)?;
        if self.degree < 3 {
            return Err(BraidError::DegreeTooSmall(self.degree - 1));
        }
        if !self.permutation().is_fixed(strand) {
            return Err(BraidError::NotFixed(strand));
        }
        let mut pos = strand;
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize;
            if j == pos {
                pos += 1;
            } else if j + 1 == pos {
                pos -= 1;
            } else if j > pos {
                letters.push(l - l.signum());
            } else {
                letters.push(l);
            }
        }
        debug_assert_eq!(pos, strand);
        Ok(Self { degree: self.degree - 1, spherical: self.spherical, letters })
    }

    /// Linking numbers between the closure of a fixed strand and the other
    /// closure components, with the resulting monotonicity verdict.
    pub fn linking_profile(&self, strand: usize) -> Result<LinkingProfile, BraidError> {
        self.check_strand(strand)?;
        let perm = self.permutation();
        if !perm.is_fixed(strand) {
            return Err(BraidError::NotFixed(strand));
        }
        // occupant[p] = original strand currently at position p (0-based)
        let n = self.degree;
        let mut occupant: Vec<usize> = (0..n).collect();
        let mut crossings = vec![0i64; n];
        let me = strand - 1;
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize - 1;
            let (lo, hi) = (occupant[j], occupant[j + 1]);
            if lo == me {
                crossings[hi] += l.signum() as i64;
            } else if hi == me {
                crossings[lo] += l.signum() as i64;
            }
            occupant.swap(j, j + 1);
        }
        let mut components = Vec::new();
        for cycle in perm.cycles() {
            if cycle.contains(&strand) {
                continue;
            }
            let signed: i64 = cycle.iter().map(|&s| crossings[s - 1]).sum();
            debug_assert!(signed % 2 == 0, "closure crossings come in pairs");
            components.push(ComponentLinking { strands: cycle, linking: signed / 2 });
        }
        let u = components.iter().map(|c| c.linking.unsigned_abs()).sum();
        let verdict = if !components.is_empty() && components.iter().all(|c| c.linking >= 1) {
            Monotonicity::Increasing
        } else if !components.is_empty() && components.iter().all(|c| c.linking <= -1) {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Indeterminate
        };
        let conclusive = verdict == Monotonicity::Increasing && self.is_positive();
        Ok(LinkingProfile { strand, components, u, verdict, conclusive })
    }

    /// Parses `"B3 1 1 -2"`, `"SB4 2 -3"` or a bare letter list. With no
    /// header the degree is `max |letter| + 1` (at least 2).
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        Self::parse_with_degree(text, None)
    }

    /// Like [`BraidWord::parse`], with an explicit degree taking precedence
    /// over inference (a header, if present, must agree with it).
    pub fn parse_with_degree(text: &str, degree: Option<usize>) -> Result<Self, BraidError> {
        let mut tokens = text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).peekable();
        let mut spherical = false;
        let mut header_degree = None;
        if let Some(first) = tokens.peek() {
            let (is_header, sph, rest) = if let Some(rest) = first.strip_prefix("SB") {
                (true, true, rest)
            } else if let Some(rest) = first.strip_prefix('B') {
                (true, false, rest)
            } else {
                (false, false, "")
            };
            if is_header {
                let d = rest.parse::<usize>().map_err(|_| BraidError::Parse(alloc::format!("bad header `{first}`")))?;
                header_degree = Some(d);
                spherical = sph;
                tokens.next();
            }
        }
        let letters = tokens
            .map(|t| t.parse::<i32>().map_err(|_| BraidError::Parse(alloc::format!("bad letter `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let inferred = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(2).max(2);
        let degree = match (degree, header_degree) {
            (Some(d), Some(h)) if d != h => return Err(BraidError::DegreeMismatch { left: d, right: h }),
            (Some(d), _) | (None, Some(d)) => d,
            (None, None) => inferred,
        };
        let word = Self::new(degree, letters)?;
        Ok(if spherical { word.sphericalize() } else { word })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}B{}", if self.spherical { "S" } else { "" }, self.degree)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

fn check_letter(letter: i32, degree: usize) -> Result<(), BraidError> {
    if letter == 0 || letter.unsigned_abs() as usize >= degree {
        return Err(BraidError::InvalidLetter { letter, degree });
    }
    Ok(())
}

/// `σ_a σ_{a+1} ⋯ σ_b` (empty when `b < a`).
pub fn ascending(a: i32, b: i32) -> Vec<i32> {
    (a..=b).collect()
}

/// `σ_a σ_{a-1} ⋯ σ_b` (empty when `a < b`).
pub fn descending(a: i32, b: i32) -> Vec<i32> {
    (b..=a).rev().collect()
}

/// The literal word of a named generator of `B_n`, for `2 ≤ j ≤ n`.
pub fn make_generator(kind: GeneratorKind, n: usize, j: usize) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::DegreeTooSmall(n));
    }
    if j < 2 || j > n {
        return Err(BraidError::GeneratorIndex { index: j, degree: n });
    }
    let top = j as i32 - 1;
    let letters = match kind {
        GeneratorKind::Delta => ascending(1, top),
        GeneratorKind::Rho => {
            let mut w = ascending(1, top);
            w.push(top);
            w
        }
        GeneratorKind::HalfTwist => (2..=j as i32).rev().flat_map(|k| ascending(1, k - 1)).collect(),
        GeneratorKind::FullTwist => {
            let delta = ascending(1, top);
            (0..j).flat_map(|_| delta.iter().copied()).collect()
        }
    };
    BraidWord::new(n, letters)
}

/// A permutation of `1..=n`, stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `1..=n`.
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// Builds a permutation from its images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self { images })
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// All images in order.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i - 1]).collect() }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img - 1] = i + 1;
        }
        Self { images }
    }

    /// Whether `i` is a fixed point.
    pub fn is_fixed(&self, i: usize) -> bool {
        self.images.get(i.wrapping_sub(1)) == Some(&i)
    }

    /// All fixed points in increasing order.
    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.images.len()).filter(|&i| self.is_fixed(i)).collect()
    }

    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| img == i + 1)
    }

    /// Disjoint cycles, each starting at its smallest point, fixed points
    /// included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (k, i) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Outcome of the sign test on linking numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Monotonicity {
    /// Every linking number is at least 1.
    Increasing,
    /// Every linking number is at most -1.
    Decreasing,
    /// Mixed or zero linking numbers.
    Indeterminate,
}

/// Linking number of the fixed strand with one closure component.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComponentLinking {
    /// Strands (1-based) forming the component.
    pub strands: Vec<usize>,
    /// Half the signed crossing count with the fixed strand.
    pub linking: i64,
}

/// Result of [`BraidWord::linking_profile`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkingProfile {
    /// The fixed strand.
    pub strand: usize,
    /// One entry per closure component of the remaining strands.
    pub components: Vec<ComponentLinking>,
    /// Sum of absolute linking numbers (the intersection number).
    pub u: u64,
    /// Sign verdict.
    pub verdict: Monotonicity,
    /// True when the verdict is certified: a positive braid that passes the
    /// sign test is increasing provided it is irreducible. Otherwise the
    /// verdict is only a necessary-condition check.
    pub conclusive: bool,
}

impl LinkingProfile {
    /// `+1` for increasing, `-1` for decreasing, `None` otherwise.
    pub fn epsilon(&self) -> Option<i32> {
        match self.verdict {
            Monotonicity::Increasing => Some(1),
            Monotonicity::Decreasing => Some(-1),
            Monotonicity::Indeterminate => None,
        }
    }
}
