//! Typed command results. Every JSON document the tool prints deserializes
//! back into one of these.

use pabraid::braid::LinkingProfile;
use pabraid::cone::ClassEntropy;
use pabraid::dynnikov::Equality;
use pabraid::families::SymmetryVerdict;
use pabraid::foliation::{FillVerdict, TorusClass};
use pabraid::monotonic::ClosedForm;
use pabraid::{BraidWord, ConeClass, ConeContext, EntropyEstimate, FamilyName, StandardForm, TwistProgram};
use serde::{Deserialize, Serialize};

use crate::args::FormKind;

/// A non-converged estimate, reported on stderr.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub subject: String,
    pub estimate: EntropyEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraidInfo {
    pub word: BraidWord,
    pub length: usize,
    pub exponent_sum: i64,
    pub positive: bool,
    /// Cycle notation, fixed points included.
    pub permutation: String,
    pub images: Vec<usize>,
    pub fixed_points: Vec<usize>,
    pub palindromic: SymmetryVerdict,
    pub skew_palindromic: SymmetryVerdict,
    /// One profile per fixed strand.
    pub linking: Vec<LinkingProfile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityReport {
    pub left: BraidWord,
    pub right: BraidWord,
    pub verdict: Equality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardFormReport {
    pub form: StandardForm,
    pub word: BraidWord,
    pub closed_form: ClosedForm,
    pub program: Option<TwistProgram>,
    /// Class of the program in the cone of the seed.
    pub class: Option<ConeClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaReport {
    pub form: StandardForm,
    pub gamma: BraidWord,
    pub estimate: Option<EntropyEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub p: u64,
    pub degree: usize,
    pub word: BraidWord,
    pub companion: Option<BraidWord>,
    pub standard_form: Option<StandardForm>,
    pub estimate: Option<EntropyEstimate>,
    /// `(degree − 1) · log λ`.
    pub normalized_entropy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: FamilyName,
    pub seed: Option<StandardForm>,
    pub k: u64,
    pub rows: Vec<FamilyRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub context: ConeContext,
    pub class: ConeClass,
    pub norm: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionReport {
    pub class: ConeClass,
    pub program: TwistProgram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeRow {
    pub class: ConeClass,
    pub norm: i64,
    pub degree: usize,
    pub estimate: EntropyEstimate,
    pub normalized_entropy: f64,
}

impl From<ClassEntropy> for ConeRow {
    fn from(c: ClassEntropy) -> Self {
        Self { class: c.class, norm: c.norm, degree: c.degree, estimate: c.estimate, normalized_entropy: c.normalized }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeTableReport {
    pub seed: StandardForm,
    pub context: ConeContext,
    pub rows: Vec<ConeRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProngRow {
    pub p: u64,
    pub class: ConeClass,
    pub axis_prongs: u64,
    pub strand_prongs: u64,
    /// Verdict for filling the boundary read on the axis torus.
    pub fill: FillVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProngReport {
    pub axis_orbit: TorusClass,
    pub strand_orbit: TorusClass,
    pub twists: i64,
    pub epsilon: i32,
    pub rows: Vec<ProngRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TribraidReport {
    pub word: BraidWord,
    /// Exact trace, as decimal text.
    pub trace: String,
    pub closed_form: String,
    pub lambda: f64,
    pub log_lambda: f64,
    pub normalized_entropy: f64,
    pub estimate: Option<EntropyEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub word: BraidWord,
    pub seed_pill: (usize, usize),
    pub estimate: EntropyEstimate,
    pub normalized_entropy: f64,
    pub penner_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinRow {
    pub label: String,
    pub genus: usize,
    pub form: FormKind,
    pub letters: Vec<i32>,
    pub preserves: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinReport {
    pub rows: Vec<SpinRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub p: u64,
    pub degree: usize,
    pub log_lambda: f64,
    pub normalized_entropy: f64,
    /// `|Ent − limit|`.
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub experiment: String,
    pub seed: StandardForm,
    /// The value the normalized entropies approach.
    pub limit: f64,
    pub rows: Vec<LimitRow>,
}
