//! Integral classes in the two-dimensional fibered subcone spanned by the
//! fiber class `[F]` and the companion disk class `[E]`.

use crate::dynnikov::{entropy_estimate, EntropyError, EntropyEstimate, EstimatorConfig};
use crate::monotonic::{ProgramError, StandardForm, TwistProgram};
use crate::numeric::gcd;

/// Errors for cone arithmetic.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConeError {
    /// The zero class has no norm or monodromy.
    #[error("the zero class is not allowed here")]
    ZeroClass,
    /// Negative coordinates lie outside the closed cone.
    #[error("class ({x}, {y}) lies outside the closed cone")]
    OutsideCone {
        /// First coordinate.
        x: i64,
        /// Second coordinate.
        y: i64,
    },
    /// Context parameters out of range.
    #[error("invalid cone context: n = {n}, u = {u}, epsilon = {epsilon}")]
    BadContext {
        /// Seed degree.
        n: usize,
        /// Seed intersection number.
        u: usize,
        /// Sign.
        epsilon: i32,
    },
    /// The seed does not match the context.
    #[error("seed has degree {degree} and {blocks} blocks but the context says n = {n}, u = {u}")]
    SeedMismatch {
        /// Seed degree.
        degree: usize,
        /// Seed block count.
        blocks: usize,
        /// Context degree.
        n: usize,
        /// Context intersection number.
        u: usize,
    },
    /// Twist parameters are positive.
    #[error("twist parameter must be at least 1")]
    NonPositiveTwist,
    /// Program or continued fraction failure.
    #[error(transparent)]
    Program(#[from] ProgramError),
    /// Estimator failure.
    #[error(transparent)]
    Entropy(#[from] EntropyError),
}

/// The class `x[F] + y[E]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConeClass {
    /// Coefficient of the fiber class.
    pub x: i64,
    /// Coefficient of the disk class.
    pub y: i64,
}

impl ConeClass {
    /// A class from its coordinates.
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Interior of the cone: both coordinates positive.
    pub fn is_interior(&self) -> bool {
        self.x > 0 && self.y > 0
    }

    /// `gcd(x, y) = 1`.
    pub fn is_primitive(&self) -> bool {
        gcd(self.x, self.y) == 1
    }

    /// The primitive class on the same ray and the multiplicity.
    pub fn primitive(&self) -> Result<(ConeClass, i64), ConeError> {
        let g = gcd(self.x, self.y);
        if g == 0 {
            return Err(ConeError::ZeroClass);
        }
        Ok((ConeClass::new(self.x / g, self.y / g), g))
    }
}

/// Parameters of the seed braid: degree, intersection number and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConeContext {
    /// Seed degree `n`.
    pub n: usize,
    /// Seed intersection number `u`.
    pub u: usize,
    /// Sign `ε`.
    pub epsilon: i32,
}

impl ConeContext {
    /// Validated context.
    pub fn new(n: usize, u: usize, epsilon: i32) -> Result<Self, ConeError> {
        if n < 3 || u < 1 || (epsilon != 1 && epsilon != -1) {
            return Err(ConeError::BadContext { n, u, epsilon });
        }
        Ok(Self { n, u, epsilon })
    }

    /// Context of an increasing standard form.
    pub fn of_seed(seed: &StandardForm) -> Self {
        Self { n: seed.degree(), u: seed.block_count(), epsilon: 1 }
    }

    /// Thurston norm `(n − 1)x + uy` on the closed cone.
    pub fn thurston_norm(&self, c: ConeClass) -> Result<i64, ConeError> {
        if c.x == 0 && c.y == 0 {
            return Err(ConeError::ZeroClass);
        }
        if c.x < 0 || c.y < 0 {
            return Err(ConeError::OutsideCone { x: c.x, y: c.y });
        }
        Ok((self.n as i64 - 1) * c.x + self.u as i64 * c.y)
    }
}

/// Pushforward under the disk twist with parameter `p`:
/// `(x, y) ↦ (x, y − px)`.
pub fn pushforward_disk_twist(p: i64, c: ConeClass) -> Result<ConeClass, ConeError> {
    if p < 1 {
        return Err(ConeError::NonPositiveTwist);
    }
    Ok(ConeClass::new(c.x, c.y - p * c.x))
}

/// Pushforward under `k` full twists: `(x, y) ↦ (x − ky, y)`.
pub fn pushforward_full_twist(k: i64, c: ConeClass) -> Result<ConeClass, ConeError> {
    if k < 1 {
        return Err(ConeError::NonPositiveTwist);
    }
    Ok(ConeClass::new(c.x - k * c.y, c.y))
}

/// The primitive class whose monodromy the program builds.
pub fn fiber_class_of_program(program: &TwistProgram) -> Result<ConeClass, ConeError> {
    if program.len().is_multiple_of(2) {
        return Err(ProgramError::NotRealizable(alloc::format!("{program}")).into());
    }
    let (x, y) = program.evaluate()?;
    if crate::monotonic::odd_continued_fraction(x, y)? != *program {
        return Err(ProgramError::NotRealizable(alloc::format!("{program}")).into());
    }
    Ok(ConeClass::new(x, y))
}

/// Normalized entropy of a class, with the data used to compute it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassEntropy {
    /// The primitive class evaluated.
    pub class: ConeClass,
    /// How many times the primitive class divides the input.
    pub multiplicity: i64,
    /// Thurston norm of the primitive class.
    pub norm: i64,
    /// Degree of the monodromy braid (`norm + 1`).
    pub degree: usize,
    /// The estimate of `log λ`.
    pub estimate: EntropyEstimate,
    /// `norm × log λ`.
    pub normalized: f64,
}

/// `‖c‖ · log λ` for the monodromy of `c`, evaluated at the primitive class
/// on the ray of `c` (normalized entropy is constant on rays).
pub fn normalized_entropy_of_class(
    ctx: &ConeContext,
    seed: &StandardForm,
    c: ConeClass,
    config: &EstimatorConfig,
) -> Result<ClassEntropy, ConeError> {
    if seed.degree() != ctx.n || seed.block_count() != ctx.u {
        return Err(ConeError::SeedMismatch { degree: seed.degree(), blocks: seed.block_count(), n: ctx.n, u: ctx.u });
    }
    let (class, multiplicity) = c.primitive()?;
    let norm = ctx.thurston_norm(class)?;
    let braid = seed.class_to_braid(class.x, class.y)?;
    debug_assert_eq!(braid.degree() as i64 - 1, norm);
    let estimate = entropy_estimate(&braid.to_braid_word(), config)?;
    if !estimate.converged {
        return Err(EntropyError::NotConverged(alloc::boxed::Box::new(estimate)).into());
    }
    let normalized = norm as f64 * estimate.value;
    Ok(ClassEntropy { class, multiplicity, norm, degree: braid.degree(), estimate, normalized })
}
