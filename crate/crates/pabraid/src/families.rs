//! Named braid families and the palindromic symmetry checks.
//!
//! Punctured families (the `•` words) are emitted literally as displayed in
//! their constructions, without conjugacy normalization:
//!
//! ```text
//! xi(p)  = (σ1⋯σ_{1+2p})(σ3⋯σ_{3+2p})            in B_{4+2p}
//! eta(p) = (σ1⋯σ_{4+2p})(σ3⋯σ_{6+2p})            in B_{7+2p}
//! o(p)   = σ1σ2(σ3⋯σ_{4+2p})²σ_{4+2p}            in B_{5+2p}
//! v(p)   = (σ1⋯σ_{4+2p})²σ_{4+2p}³               in B_{5+2p}
//! ```
//!
//! `o` and `v` also carry the spherical companion `S(sh(·))`. The seeded
//! families run a twist program on a standard form.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::braid::{ascending, BraidError, BraidWord};
use crate::dynnikov::{braids_equal, entropy_estimate, EntropyError, EntropyEstimate, EstimatorConfig};
use crate::monotonic::{ProgramError, StandardForm, TwistProgram};

/// Errors for family generation and the symmetry checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    /// Parameters start at 1.
    #[error("family parameter must be at least 1, got {0}")]
    BadParameter(u64),
    /// z, beta and b_p need a seed.
    #[error("family {0} needs a seed standard form")]
    MissingSeed(FamilyName),
    /// The fixed families take no seed or pre-twist.
    #[error("family {0} takes no seed or pre-twist")]
    UnexpectedSeed(FamilyName),
    /// Unknown family name.
    #[error("unknown family {0:?}")]
    UnknownName(String),
    /// The palindromic bound needs a palindromic braid.
    #[error("braid is not palindromic")]
    NotPalindromic,
    /// The palindromic bound needs a pseudo-Anosov estimate.
    #[error("entropy estimate {0} is not positive")]
    NotPseudoAnosov(f64),
    /// Word construction failed.
    #[error(transparent)]
    Braid(#[from] BraidError),
    /// Twist program failed.
    #[error(transparent)]
    Program(#[from] ProgramError),
    /// Estimator failed.
    #[error(transparent)]
    Entropy(#[from] EntropyError),
}

/// Family names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FamilyName {
    /// Skew-palindromic, even degree.
    Xi,
    /// Skew-palindromic, odd degree.
    Eta,
    /// Odd spin family.
    O,
    /// Even spin family.
    V,
    /// Program `[0, k+p, 1]` on a seed.
    Z,
    /// Program `[0, 1, p]` on a seed.
    Beta,
    /// Program `[p]` on a seed.
    BP,
}

impl FamilyName {
    /// All names in display order.
    pub const ALL: [FamilyName; 7] =
        [FamilyName::Xi, FamilyName::Eta, FamilyName::O, FamilyName::V, FamilyName::Z, FamilyName::Beta, FamilyName::BP];

    /// Whether the family is built from a seed standard form.
    pub fn is_seeded(&self) -> bool {
        matches!(self, FamilyName::Z | FamilyName::Beta | FamilyName::BP)
    }

    /// Lower-case name used on the command line.
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::Xi => "xi",
            FamilyName::Eta => "eta",
            FamilyName::O => "o",
            FamilyName::V => "v",
            FamilyName::Z => "z",
            FamilyName::Beta => "beta",
            FamilyName::BP => "b_p",
        }
    }
}

impl core::fmt::Display for FamilyName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for FamilyName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyName::ALL
            .into_iter()
            .find(|n| n.as_str() == s || (s == "bp" && *n == FamilyName::BP))
            .ok_or_else(|| FamilyError::UnknownName(s.into()))
    }
}

/// A family member request.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    /// Family.
    pub name: FamilyName,
    /// Parameter, at least 1.
    pub p: u64,
    /// Seed for the seeded families.
    pub seed: Option<StandardForm>,
    /// Pre-twist for `z`.
    pub k: u64,
}

impl FamilySpec {
    /// Spec for an unseeded family.
    pub fn fixed(name: FamilyName, p: u64) -> Self {
        Self { name, p, seed: None, k: 0 }
    }

    /// Spec for a seeded family.
    pub fn seeded(name: FamilyName, p: u64, seed: StandardForm, k: u64) -> Self {
        Self { name, p, seed: Some(seed), k }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        if self.p < 1 {
            return Err(FamilyError::BadParameter(self.p));
        }
        match (self.name.is_seeded(), &self.seed) {
            (true, None) => Err(FamilyError::MissingSeed(self.name)),
            (false, Some(_)) => Err(FamilyError::UnexpectedSeed(self.name)),
            (false, None) if self.k != 0 => Err(FamilyError::UnexpectedSeed(self.name)),
            _ => Ok(()),
        }
    }
}

/// A generated family member.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    /// The braid word.
    pub word: BraidWord,
    /// `S(sh(word))` for the spin families.
    pub companion: Option<BraidWord>,
    /// The standard form behind a seeded member.
    pub standard_form: Option<StandardForm>,
}

/// The standard form `σ₁⁻¹` in `B₃`, seed of the default `z` family
/// (conjugate to `σ₁²σ₂⁻¹` after the full twist).
pub fn default_seed() -> StandardForm {
    StandardForm::new(3, vec![vec![-1]]).expect("valid seed")
}

fn word(n: usize, letters: Vec<i32>) -> Result<BraidWord, FamilyError> {
    Ok(BraidWord::new(n, letters)?)
}

fn p_i32(p: u64) -> Result<i32, FamilyError> {
    i32::try_from(p).ok().filter(|&p| p < i32::MAX / 4).ok_or(FamilyError::BadParameter(p))
}

/// Builds a family member.
pub fn generate(spec: &FamilySpec) -> Result<FamilyMember, FamilyError> {
    spec.validate()?;
    let p = spec.p;
    let member = |word| FamilyMember { word, companion: None, standard_form: None };
    let spin = |word: BraidWord| {
        let companion = Some(word.shifted().sphericalize());
        FamilyMember { word, companion, standard_form: None }
    };
    let seeded = |entries: Vec<u64>| -> Result<FamilyMember, FamilyError> {
        let seed = spec.seed.as_ref().expect("validated");
        let form = seed.apply_program(&TwistProgram::new(entries)?)?;
        Ok(FamilyMember { word: form.to_braid_word(), companion: None, standard_form: Some(form) })
    };
    match spec.name {
        FamilyName::Xi => xi_punctured(p).map(member),
        FamilyName::Eta => eta_punctured(p).map(member),
        FamilyName::O => o_punctured(p).map(spin),
        FamilyName::V => v_punctured(p).map(spin),
        FamilyName::Z => seeded(vec![0, spec.k.checked_add(p).ok_or(FamilyError::BadParameter(p))?, 1]),
        FamilyName::Beta => seeded(vec![0, 1, p]),
        FamilyName::BP => seeded(vec![p]),
    }
}

/// `ξ_p• ∈ B_{4+2p}`.
pub fn xi_punctured(p: u64) -> Result<BraidWord, FamilyError> {
    let q = p_i32(p)?;
    let mut letters = ascending(1, 1 + 2 * q);
    letters.extend(ascending(3, 3 + 2 * q));
    word(4 + 2 * q as usize, letters)
}

/// `η_p• ∈ B_{7+2p}`.
pub fn eta_punctured(p: u64) -> Result<BraidWord, FamilyError> {
    let q = p_i32(p)?;
    let mut letters = ascending(1, 4 + 2 * q);
    letters.extend(ascending(3, 6 + 2 * q));
    word(7 + 2 * q as usize, letters)
}

/// `o_p• ∈ B_{5+2p}`.
pub fn o_punctured(p: u64) -> Result<BraidWord, FamilyError> {
    let q = p_i32(p)?;
    let run = ascending(3, 4 + 2 * q);
    let mut letters = vec![1, 2];
    letters.extend(&run);
    letters.extend(&run);
    letters.push(4 + 2 * q);
    word(5 + 2 * q as usize, letters)
}

/// `v_p• ∈ B_{5+2p}`.
pub fn v_punctured(p: u64) -> Result<BraidWord, FamilyError> {
    let q = p_i32(p)?;
    let run = ascending(1, 4 + 2 * q);
    let mut letters = run.clone();
    letters.extend(&run);
    letters.extend([4 + 2 * q; 3]);
    word(5 + 2 * q as usize, letters)
}

/// A braid with a distinguished fixed strand whose removal gives a
/// punctured family member.
#[derive(Debug, Clone, PartialEq)]
pub struct Unpunctured {
    /// The braid.
    pub word: BraidWord,
    /// The fixed strand.
    pub fixed_strand: usize,
}

/// `ξ_p = (σ1⋯σ_{2+2p})(σ_{2+2p}σ_{3+2p})(σ3⋯σ_{4+2p}) ∈ B_{5+2p}`, fixed
/// strand `3+2p`.
pub fn xi_unpunctured(p: u64) -> Result<Unpunctured, FamilyError> {
    let q = p_i32(p)?;
    let mut letters = ascending(1, 2 + 2 * q);
    letters.extend([2 + 2 * q, 3 + 2 * q]);
    letters.extend(ascending(3, 4 + 2 * q));
    Ok(Unpunctured { word: word(5 + 2 * q as usize, letters)?, fixed_strand: 3 + 2 * q as usize })
}

/// `η_p = (σ1⋯σ_{5+2p})(σ_{3+2p}σ_{4+2p})(σ3⋯σ_{7+2p}) ∈ B_{8+2p}`, fixed
/// strand `4+2p`.
pub fn eta_unpunctured(p: u64) -> Result<Unpunctured, FamilyError> {
    let q = p_i32(p)?;
    let mut letters = ascending(1, 5 + 2 * q);
    letters.extend([3 + 2 * q, 4 + 2 * q]);
    letters.extend(ascending(3, 7 + 2 * q));
    Ok(Unpunctured { word: word(8 + 2 * q as usize, letters)?, fixed_strand: 4 + 2 * q as usize })
}

/// The base braids the families are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseBraid {
    /// `σ1σ2²σ3²σ4 ∈ B5`.
    Xi,
    /// `σ1σ2σ3σ4σ5σ3σ4σ3σ4σ5σ6σ7 ∈ B8`.
    Eta,
    /// `σ1σ2σ3σ4σ5σ3²σ4σ5σ3σ5 ∈ B6`.
    O,
    /// `(σ1σ2σ3σ4σ5)²σ1σ2σ5³ ∈ B6`.
    V,
}

impl BaseBraid {
    /// The literal word.
    pub fn word(&self) -> BraidWord {
        let (n, letters): (usize, &[i32]) = match self {
            BaseBraid::Xi => (5, &[1, 2, 2, 3, 3, 4]),
            BaseBraid::Eta => (8, &[1, 2, 3, 4, 5, 3, 4, 3, 4, 5, 6, 7]),
            BaseBraid::O => (6, &[1, 2, 3, 4, 5, 3, 3, 4, 5, 3, 5]),
            BaseBraid::V => (6, &[1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1, 2, 5, 5, 5]),
        };
        BraidWord::new(n, letters.to_vec()).expect("valid base word")
    }
}

/// Outcome of a symmetry check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SymmetryVerdict {
    /// The transformed word equals the word letter for letter.
    pub word_level: bool,
    /// The transformed word is the same braid.
    pub braid_level: bool,
    /// For palindromic checks: the square of the permutation is trivial.
    /// Always true for skew checks, where it is not asserted.
    pub pure_square: bool,
}

impl SymmetryVerdict {
    /// Symmetric as a braid.
    pub fn holds(&self) -> bool {
        self.braid_level
    }
}

/// `rev(b) = b`, literally and as braids.
pub fn is_palindromic(b: &BraidWord) -> SymmetryVerdict {
    let rev = b.reversed();
    let word_level = rev.letters() == b.letters();
    let braid_level = word_level || braids_equal(&rev, b).is_equal();
    let pi = b.permutation();
    let pure_square = !braid_level || pi.compose(&pi).is_identity();
    debug_assert!(pure_square, "palindromic braids have involutive permutations");
    SymmetryVerdict { word_level, braid_level, pure_square }
}

/// `skew(b) = b`, literally and as braids.
pub fn is_skew_palindromic(b: &BraidWord) -> SymmetryVerdict {
    let skew = b.skewed();
    let word_level = skew.letters() == b.letters();
    let braid_level = word_level || braids_equal(&skew, b).is_equal();
    SymmetryVerdict { word_level, braid_level, pure_square: true }
}

/// `log √(2+√5)`, the lower bound for palindromic pseudo-Anosov braids.
pub fn palindromic_threshold() -> f64 {
    0.5 * libm::log(2.0 + libm::sqrt(5.0))
}

/// Result of [`palindromic_bound_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct PalindromicBound {
    /// Estimate for `b`.
    pub estimate: EntropyEstimate,
    /// Estimate for the pure braid `b²`.
    pub square_estimate: EntropyEstimate,
    /// `log λ(b) ≥ log √(2+√5) − tol`.
    pub direct: bool,
    /// `log λ(b²) ≥ log(2+√5) − tol`.
    pub via_square: bool,
}

impl PalindromicBound {
    /// Both routes agree that the bound holds.
    pub fn passes(&self) -> bool {
        self.direct && self.via_square
    }
}

/// Checks the palindromic dilatation bound for `b`, directly and through the
/// pure square `b²`.
pub fn palindromic_bound_check(b: &BraidWord, config: &EstimatorConfig) -> Result<PalindromicBound, FamilyError> {
    if !is_palindromic(b).holds() {
        return Err(FamilyError::NotPalindromic);
    }
    let converged = |w: &BraidWord| -> Result<EntropyEstimate, FamilyError> {
        let e = entropy_estimate(w, config)?;
        if !e.converged {
            return Err(EntropyError::NotConverged(alloc::boxed::Box::new(e)).into());
        }
        Ok(e)
    };
    let estimate = converged(b)?;
    if estimate.value <= config.tol {
        return Err(FamilyError::NotPseudoAnosov(estimate.value));
    }
    let square_estimate = converged(&b.pow(2))?;
    let threshold = palindromic_threshold();
    Ok(PalindromicBound {
        direct: estimate.value >= threshold - config.tol,
        via_square: square_estimate.value >= 2.0 * threshold - config.tol,
        estimate,
        square_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{lift_braid, preserves_form, QuadraticForm};
    use proptest::prelude::*;

    fn fixed(name: FamilyName, p: u64) -> FamilyMember {
        generate(&FamilySpec::fixed(name, p)).unwrap()
    }

    fn max_index(b: &BraidWord) -> usize {
        b.letters().iter().map(|l| l.unsigned_abs() as usize).max().unwrap()
    }

    #[test]
    fn literal_goldens() {
        assert_eq!(fixed(FamilyName::Xi, 1).word.letters(), &[1, 2, 3, 3, 4, 5]);
        assert_eq!(fixed(FamilyName::Xi, 1).word.degree(), 6);
        let o = fixed(FamilyName::O, 1);
        assert_eq!(o.word.letters(), &[1, 2, 3, 4, 5, 6, 3, 4, 5, 6, 6]);
        assert_eq!(o.word.degree(), 7);
        let c = o.companion.unwrap();
        assert_eq!(c.letters(), &[2, 3, 4, 5, 6, 7, 4, 5, 6, 7, 7]);
        assert!(c.is_spherical() && c.degree() == 8);
        let v = fixed(FamilyName::V, 1);
        assert_eq!(v.word.letters(), &[1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6, 6, 6, 6]);
    }

    #[test]
    fn degree_laws() {
        for p in 1..=10u64 {
            let q = p as usize;
            for (name, degree, len) in [
                (FamilyName::Xi, 4 + 2 * q, 2 + 4 * q),
                (FamilyName::Eta, 7 + 2 * q, 8 + 4 * q),
                (FamilyName::O, 5 + 2 * q, 7 + 4 * q),
                (FamilyName::V, 5 + 2 * q, 11 + 4 * q),
            ] {
                let w = fixed(name, p).word;
                assert_eq!((w.degree(), w.len(), max_index(&w)), (degree, len, degree - 1), "{name} p={p}");
            }
            let z = generate(&FamilySpec::seeded(FamilyName::Z, p, default_seed(), 0)).unwrap();
            assert_eq!(z.word.degree(), 4 + 2 * q);
        }
    }

    #[test]
    fn base_words_are_the_zeroth_unpunctured_members() {
        // the unpunctured formulas at p = 0 reproduce the displayed base words
        let xi0 = {
            let mut l = ascending(1, 2);
            l.extend([2, 3]);
            l.extend(ascending(3, 4));
            l
        };
        assert_eq!(BaseBraid::Xi.word().letters(), &xi0[..]);
        let eta0 = {
            let mut l = ascending(1, 5);
            l.extend([3, 4]);
            l.extend(ascending(3, 7));
            l
        };
        assert_eq!(BaseBraid::Eta.word().letters(), &eta0[..]);
        assert_eq!(BaseBraid::O.word().len(), 11);
        assert_eq!(BaseBraid::V.word().len(), 15);
    }

    #[test]
    fn punctured_members_come_from_fixed_strands() {
        for p in 1..=4u64 {
            for (full, punctured) in [(xi_unpunctured(p).unwrap(), fixed(FamilyName::Xi, p).word), (eta_unpunctured(p).unwrap(), fixed(FamilyName::Eta, p).word)] {
                assert!(full.word.permutation().is_fixed(full.fixed_strand));
                let removed = full.word.remove_strand(full.fixed_strand).unwrap();
                assert!(braids_equal(&removed, &punctured).is_equal(), "p={p}");
            }
        }
    }

    #[test]
    fn skew_symmetry() {
        for p in 1..=10u64 {
            for name in [FamilyName::Xi, FamilyName::Eta] {
                let w = fixed(name, p).word;
                assert_eq!(w.skewed().letters(), w.letters());
                assert!(is_skew_palindromic(&w).word_level);
            }
        }
        let b = BraidWord::new(3, vec![1, 2]).unwrap();
        let v = is_palindromic(&b);
        assert!(!v.word_level && !v.braid_level);
    }

    #[test]
    fn spin_family_membership() {
        for p in 1..=4u64 {
            let g = p as usize + 2;
            let o = lift_braid(&fixed(FamilyName::O, p).companion.unwrap()).unwrap();
            let v = lift_braid(&fixed(FamilyName::V, p).companion.unwrap()).unwrap();
            assert_eq!((o.genus(), v.genus()), (g, g));
            assert!(preserves_form(&o, &QuadraticForm::odd(g).unwrap()), "o p={p}");
            assert!(preserves_form(&v, &QuadraticForm::even(g).unwrap()), "v p={p}");
        }
    }

    #[test]
    fn invalid_requests_are_rejected() {
        assert_eq!(generate(&FamilySpec::fixed(FamilyName::Z, 1)), Err(FamilyError::MissingSeed(FamilyName::Z)));
        assert_eq!(generate(&FamilySpec::fixed(FamilyName::Xi, 0)), Err(FamilyError::BadParameter(0)));
        assert!(generate(&FamilySpec::seeded(FamilyName::Xi, 1, default_seed(), 0)).is_err());
        assert_eq!("b_p".parse::<FamilyName>(), Ok(FamilyName::BP));
        assert!("zeta".parse::<FamilyName>().is_err());
    }

    #[test]
    fn palindromic_bound() {
        assert!((palindromic_threshold() - 0.7218).abs() < 1e-3);
        assert!((libm::exp(palindromic_threshold()) - 2.0582).abs() < 1e-4);
        let b = BraidWord::new(3, vec![1, -2, -2, 1]).unwrap();
        let r = palindromic_bound_check(&b, &EstimatorConfig::default()).unwrap();
        assert!(r.passes(), "{r:?}");
        let not = BraidWord::new(3, vec![1, -2]).unwrap();
        assert_eq!(palindromic_bound_check(&not, &EstimatorConfig::default()), Err(FamilyError::NotPalindromic));
    }

    proptest! {
        #[test]
        fn doubled_words_are_symmetric(letters in proptest::collection::vec(prop_oneof![-4i32..=-1, 1i32..=4], 0..10)) {
            let b = BraidWord::new(5, letters).unwrap();
            let pal = b.concat(&b.reversed()).unwrap();
            let v = is_palindromic(&pal);
            prop_assert!(v.word_level && v.braid_level && v.pure_square);
            let skew = b.concat(&b.skewed()).unwrap();
            prop_assert!(is_skew_palindromic(&skew).word_level);
        }
    }
}
