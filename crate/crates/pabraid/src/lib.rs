//! Constructive machinery for pseudo-Anosov braids with small normalized
//! entropy.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! processes or the command line lives in the companion `pabraid-cli` crate.
//!
//! Module map:
//!
//! * [`braid`]: braid words in `B_n` and `SB_n`, permutations, symmetries,
//!   strand removal and linking profiles.
//! * [`monotonic`]: standard forms of increasing braids, twist steps, twist
//!   programs, odd continued fractions and the `γ` construction.
//! * [`cone`]: integral classes in the two-dimensional fibered subcone.
//! * [`foliation`]: boundary slopes, prong counts and the Penner bound.
//! * [`three_braid`]: exact dilatations of 3-braids given as pA words.
//! * [`dynnikov`]: the piecewise-linear action on curve coordinates, the
//!   entropy estimator and a word-problem oracle.
//! * [`spin`]: `Z/2` homology of hyperelliptic mapping classes and spin
//!   membership.
//! * [`families`]: the named braid families.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod braid;
pub mod cone;
pub mod dynnikov;
pub mod families;
pub mod foliation;
pub mod monotonic;
pub mod spin;
pub mod three_braid;

mod numeric;

pub use braid::{BraidError, BraidWord, GeneratorKind, Permutation};
pub use cone::{ConeClass, ConeContext, ConeError};
pub use dynnikov::{CurveCoordinates, EntropyError, EntropyEstimate, EstimatorConfig};
pub use families::{FamilyError, FamilyName, FamilySpec};
pub use monotonic::{ProgramError, StandardForm, TwistProgram};
pub use spin::{MappingWord, QuadraticForm, SpinError};
pub use three_braid::{Dilatation, PaWord};
