//! Boundary slopes, prong counts, closed-orbit classes and the Penner
//! bound.
//!
//! Torus classes are `(p, q)` in meridian–longitude coordinates. Closed-orbit
//! classes are not derived from braids; they come from presets or the
//! caller, and only their full-twist composition rule is implemented.

use crate::numeric::{gcd, LN_2};

/// Errors for slope and prong bookkeeping.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FoliationError {
    /// The class must be primitive.
    #[error("class ({x}, {y}) is not primitive")]
    NotCoprime {
        /// First coordinate.
        x: i64,
        /// Second coordinate.
        y: i64,
    },
    /// Signs are `+1` or `-1`.
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i32),
    /// The axis orbit class needs nonzero meridian part.
    #[error("axis orbit class ({p}, {q}) has zero meridian coordinate")]
    DegenerateAxisOrbit {
        /// Meridian coordinate.
        p: i64,
        /// Longitude coordinate.
        q: i64,
    },
    /// The strand orbit class needs nonzero longitude part.
    #[error("strand orbit class ({p}, {q}) has zero longitude coordinate")]
    DegenerateStrandOrbit {
        /// Meridian coordinate.
        p: i64,
        /// Longitude coordinate.
        q: i64,
    },
    /// Full-twist counts are positive.
    #[error("full twist count must be at least 1, got {0}")]
    NonPositiveTwist(i64),
    /// Prong counts are positive.
    #[error("prong count must be at least 1, got {0}")]
    BadProngs(u64),
    /// Genus and puncture count give no hyperbolic surface.
    #[error("12g - 12 + 4n = {0} is not positive")]
    NotHyperbolic(i64),
}

/// A class on a boundary torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TorusClass {
    /// Meridian coordinate.
    pub p: i64,
    /// Longitude coordinate.
    pub q: i64,
}

impl TorusClass {
    /// A class from its coordinates.
    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }
}

/// Geometric intersection `|pq' − p'q|` of two torus classes.
pub fn torus_intersection(a: TorusClass, b: TorusClass) -> u64 {
    (a.p * b.q - b.p * a.q).unsigned_abs()
}

/// Where an orbit class came from.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum OrbitSource {
    /// A named preset.
    Preset(&'static str),
    /// Supplied by the caller.
    User,
    /// Derived from another orbit by full twists.
    Twisted {
        /// Total number of full twists applied.
        k: i64,
    },
}

/// Closed-orbit classes on the axis torus and on a strand torus.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OrbitData {
    /// Class on the axis torus.
    pub axis: TorusClass,
    /// Class on the strand torus.
    pub strand: TorusClass,
    /// Provenance.
    pub source: OrbitSource,
}

/// Name of the preset for `σ₁⁻¹σ₂²σ₁⁻¹σ₂²` at its third strand.
pub const TWISTED_PAIR_PRESET: &str = "three-braid -1 2 2 -1 2 2, strand 3";

impl OrbitData {
    /// Validated user data.
    pub fn new(axis: TorusClass, strand: TorusClass) -> Result<Self, FoliationError> {
        let orbit = Self { axis, strand, source: OrbitSource::User };
        orbit.validate()?;
        Ok(orbit)
    }

    /// The preset for `σ₁⁻¹σ₂²σ₁⁻¹σ₂²` with respect to strand 3: axis
    /// `(1, 0)`, strand `(2, 1)`.
    pub fn twisted_pair_preset() -> Self {
        Self { axis: TorusClass::new(1, 0), strand: TorusClass::new(2, 1), source: OrbitSource::Preset(TWISTED_PAIR_PRESET) }
    }

    fn validate(&self) -> Result<(), FoliationError> {
        if self.axis.p == 0 {
            return Err(FoliationError::DegenerateAxisOrbit { p: self.axis.p, q: self.axis.q });
        }
        if self.strand.q == 0 {
            return Err(FoliationError::DegenerateStrandOrbit { p: self.strand.p, q: self.strand.q });
        }
        Ok(())
    }

    /// Orbit classes after `k ≥ 1` full twists: axis `+ (0, k)`, strand
    /// `+ (k, 0)`.
    pub fn compose_full_twist(&self, k: i64) -> Result<Self, FoliationError> {
        if k < 1 {
            return Err(FoliationError::NonPositiveTwist(k));
        }
        let prior = match self.source {
            OrbitSource::Twisted { k } => k,
            _ => 0,
        };
        Ok(Self {
            axis: TorusClass::new(self.axis.p, self.axis.q + k),
            strand: TorusClass::new(self.strand.p + k, self.strand.q),
            source: OrbitSource::Twisted { k: prior + k },
        })
    }
}

fn check_epsilon(epsilon: i32) -> Result<(), FoliationError> {
    if epsilon != 1 && epsilon != -1 {
        return Err(FoliationError::BadEpsilon(epsilon));
    }
    Ok(())
}

/// Boundary slopes of the fiber of `(x, y)`: axis `(−εy, x)`, strand
/// `(−εx, y)`.
pub fn boundary_slopes(epsilon: i32, x: i64, y: i64) -> Result<(TorusClass, TorusClass), FoliationError> {
    check_epsilon(epsilon)?;
    if gcd(x, y) != 1 {
        return Err(FoliationError::NotCoprime { x, y });
    }
    let e = epsilon as i64;
    Ok((TorusClass::new(-e * y, x), TorusClass::new(-e * x, y)))
}

/// Prong counts of the stable foliation at the axis and strand boundaries.
pub fn prong_counts(orbit: &OrbitData, epsilon: i32, x: i64, y: i64) -> Result<(u64, u64), FoliationError> {
    orbit.validate()?;
    let (axis_slope, strand_slope) = boundary_slopes(epsilon, x, y)?;
    Ok((torus_intersection(orbit.axis, axis_slope), torus_intersection(orbit.strand, strand_slope)))
}

/// Whether a boundary component may be filled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FillVerdict {
    /// At least two prongs: the filled map stays pseudo-Anosov with the
    /// same dilatation.
    Safe,
    /// One prong: filling may destroy the pseudo-Anosov property.
    Unsafe,
}

/// Puncture-fill criterion.
pub fn puncture_fill_validity(prongs: u64) -> Result<FillVerdict, FoliationError> {
    match prongs {
        0 => Err(FoliationError::BadProngs(0)),
        1 => Ok(FillVerdict::Unsafe),
        _ => Ok(FillVerdict::Safe),
    }
}

/// Penner's lower bound `log 2 / (12g − 12 + 4n)` on `log λ` for
/// pseudo-Anosov maps of the genus-`g` surface with `n` punctures.
pub fn penner_bound(g: u32, n: u32) -> Result<f64, FoliationError> {
    let denom = 12 * g as i64 - 12 + 4 * n as i64;
    if denom <= 0 {
        return Err(FoliationError::NotHyperbolic(denom));
    }
    Ok(LN_2 / denom as f64)
}

/// The Penner floor for an `n`-braid, read on the sphere with `n + 1`
/// punctures.
pub fn penner_floor_for_braid(n: usize) -> Result<f64, FoliationError> {
    penner_bound(0, n as u32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn slopes() {
        let p = 4;
        assert_eq!(boundary_slopes(1, p + 1, 1), Ok((TorusClass::new(-1, p + 1), TorusClass::new(-(p + 1), 1))));
        assert_eq!(boundary_slopes(1, 1, 1), Ok((TorusClass::new(-1, 1), TorusClass::new(-1, 1))));
        assert_eq!(boundary_slopes(-1, 1, 0), Ok((TorusClass::new(0, 1), TorusClass::new(1, 0))));
        assert_eq!(boundary_slopes(1, 2, 4), Err(FoliationError::NotCoprime { x: 2, y: 4 }));
        assert_eq!(boundary_slopes(0, 1, 1), Err(FoliationError::BadEpsilon(0)));
    }

    #[test]
    fn intersections() {
        let p = 7;
        assert_eq!(torus_intersection(TorusClass::new(1, 1), TorusClass::new(-1, p)), p as u64 + 1);
        assert_eq!(torus_intersection(TorusClass::new(3, 1), TorusClass::new(-p, 1)), p as u64 + 3);
        let a = TorusClass::new(5, -3);
        assert_eq!(torus_intersection(a, a), 0);
    }

    #[test]
    fn orbit_composition_and_prongs() {
        let twisted = OrbitData::twisted_pair_preset().compose_full_twist(1).unwrap();
        assert_eq!((twisted.axis, twisted.strand), (TorusClass::new(1, 1), TorusClass::new(3, 1)));
        let again = twisted.compose_full_twist(2).unwrap();
        assert_eq!((again.axis, again.strand), (TorusClass::new(1, 3), TorusClass::new(5, 1)));
        assert_eq!(again.source, OrbitSource::Twisted { k: 3 });
        assert_eq!(twisted.compose_full_twist(0), Err(FoliationError::NonPositiveTwist(0)));
        for p in 1..=10 {
            assert_eq!(prong_counts(&twisted, 1, p, 1), Ok((p as u64 + 1, p as u64 + 3)));
        }
        let (k, l, k2, l2) = (2i64, 3i64, 5i64, 1i64);
        let orbit = OrbitData::new(TorusClass::new(k, l), TorusClass::new(k2, l2)).unwrap();
        for p in 1..5 {
            let expect = ((k * (p + 1) + l).unsigned_abs(), (k2 + l2 * (p + 1)).unsigned_abs());
            assert_eq!(prong_counts(&orbit, 1, p + 1, 1), Ok(expect));
        }
        let trivial = OrbitData::new(TorusClass::new(1, 0), TorusClass::new(0, 1)).unwrap();
        assert_eq!(prong_counts(&trivial, 1, 1, 0), Ok((1, 1)));
        assert!(OrbitData::new(TorusClass::new(0, 1), TorusClass::new(0, 1)).is_err());
        assert!(OrbitData::new(TorusClass::new(1, 1), TorusClass::new(1, 0)).is_err());
    }

    #[test]
    fn filling_and_penner() {
        assert_eq!(puncture_fill_validity(1), Ok(FillVerdict::Unsafe));
        assert_eq!(puncture_fill_validity(3), Ok(FillVerdict::Safe));
        assert!(puncture_fill_validity(0).is_err());
        let b = penner_bound(0, 4).unwrap();
        assert!((b - LN_2 / 4.0).abs() < 1e-15);
        assert!(libm::log(2.0 + libm::sqrt(3.0)) > b);
        assert_eq!(penner_bound(1, 0), Err(FoliationError::NotHyperbolic(0)));
        assert!((penner_bound(2, 0).unwrap() - LN_2 / 12.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn intersection_symmetry(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let (x, y) = (TorusClass::new(a, b), TorusClass::new(c, d));
            prop_assert_eq!(torus_intersection(x, y), torus_intersection(y, x));
            prop_assert_eq!(torus_intersection(x, y), torus_intersection(TorusClass::new(-a, -b), y));
        }

        #[test]
        fn slopes_are_primitive(x in 0i64..200, y in 0i64..200, eps in prop_oneof![Just(1), Just(-1)]) {
            prop_assume!(gcd(x, y) == 1);
            let (s, t) = boundary_slopes(eps, x, y).unwrap();
            prop_assert_eq!(gcd(s.p, s.q), 1);
            prop_assert_eq!(gcd(t.p, t.q), 1);
        }
    }
}
