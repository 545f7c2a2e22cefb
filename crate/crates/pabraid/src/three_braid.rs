//! Exact dilatations of 3-braids written as pA words.
//!
//! A pA word uses only `σ₁⁻¹` and `σ₂`, each at least once. Its train track
//! map has transition matrix the ordered product of
//! `σ₁⁻¹ ↦ [[1,1],[0,1]]` and `σ₂ ↦ [[1,0],[1,1]]`, so the dilatation is the
//! larger root of `t² − tr·t + 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::braid::BraidWord;
use crate::numeric::ln_bigint_abs;

/// Errors for pA words.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PaWordError {
    /// A letter other than `-1` or `2`.
    #[error("letter {0} is not allowed in a pA word (only -1 and 2)")]
    BadLetter(i32),
    /// One of the two letter kinds never occurs.
    #[error("a pA word must contain both -1 and 2")]
    MissingLetter,
    /// The source braid is not a 3-braid.
    #[error("pA words live in B_3, got degree {0}")]
    WrongDegree(usize),
    /// Trace at most 2; impossible for valid pA words.
    #[error("trace {0} is at most 2: not pseudo-Anosov")]
    NotHyperbolic(String),
}

/// A nonempty word over `{σ₁⁻¹, σ₂}` that uses both letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PaWord {
    letters: Vec<i32>,
}

impl PaWord {
    /// Validates a letter list (encoded `-1` / `2`).
    pub fn new(letters: Vec<i32>) -> Result<Self, PaWordError> {
        if let Some(&bad) = letters.iter().find(|&&l| l != -1 && l != 2) {
            return Err(PaWordError::BadLetter(bad));
        }
        if !letters.contains(&-1) || !letters.contains(&2) {
            return Err(PaWordError::MissingLetter);
        }
        Ok(Self { letters })
    }

    /// Reads a pA word off a 3-braid.
    pub fn from_braid(b: &BraidWord) -> Result<Self, PaWordError> {
        if b.degree() != 3 {
            return Err(PaWordError::WrongDegree(b.degree()));
        }
        Self::new(b.letters().to_vec())
    }

    /// The letters.
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// The word as an element of `B_3`.
    pub fn to_braid(&self) -> BraidWord {
        BraidWord::new(3, self.letters.clone()).expect("pA letters are valid in B_3")
    }

    /// Cyclic rotation by `k` letters.
    pub fn rotated(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        let len = letters.len();
        letters.rotate_left(k % len);
        Self { letters }
    }

    /// Concatenation of two pA words.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }
}

/// 2×2 matrix over arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix2 {
    /// Entries `[[a, b], [c, d]]`.
    pub entries: [[BigInt; 2]; 2],
}

impl IntegerMatrix2 {
    /// Matrix from four small entries.
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { entries: [[a.into(), b.into()], [c.into(), d.into()]] }
    }

    /// Identity matrix.
    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let e = |i: usize, j: usize| &self.entries[i][0] * &rhs.entries[0][j] + &self.entries[i][1] * &rhs.entries[1][j];
        Self { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    /// Trace.
    pub fn trace(&self) -> BigInt {
        &self.entries[0][0] + &self.entries[1][1]
    }

    /// Determinant.
    pub fn determinant(&self) -> BigInt {
        &self.entries[0][0] * &self.entries[1][1] - &self.entries[0][1] * &self.entries[1][0]
    }
}

/// Transition matrix of the train track map of a pA word.
pub fn transition_matrix(w: &PaWord) -> IntegerMatrix2 {
    let left = IntegerMatrix2::from_i64(1, 1, 0, 1);
    let right = IntegerMatrix2::from_i64(1, 0, 1, 1);
    w.letters.iter().fold(IntegerMatrix2::identity(), |acc, &l| acc.mul(if l == -1 { &left } else { &right }))
}

/// An exact dilatation `λ = (tr + √(tr² − 4)) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dilatation {
    /// The exact trace.
    pub trace: BigInt,
    /// `λ` rounded to f64 (infinite if it overflows).
    pub value: f64,
    /// `log λ`, accurate even when `λ` itself overflows.
    pub log_value: f64,
}

impl Dilatation {
    /// Dilatation of the hyperbolic matrix class with this trace.
    pub fn from_trace(trace: BigInt) -> Result<Self, PaWordError> {
        if trace <= BigInt::from(2) {
            return Err(PaWordError::NotHyperbolic(format!("{trace}")));
        }
        let (value, log_value) = match trace.to_f64() {
            Some(t) if t.is_finite() && t < 1e150 => {
                let lam = (t + libm::sqrt(t * t - 4.0)) / 2.0;
                // log of the larger root, written to avoid cancellation
                let log_value = libm::log(t) + libm::log1p(libm::sqrt(1.0 - 4.0 / (t * t))) - core::f64::consts::LN_2;
                (lam, log_value)
            }
            _ => (f64::INFINITY, ln_bigint_abs(&trace)),
        };
        Ok(Self { trace, value, log_value })
    }

    /// The exact closed form `(tr + s√c)/2` as text, with square factors of
    /// the discriminant below 1000 pulled out and even terms halved, so a
    /// trace of 4 prints as `2 + √3`.
    pub fn closed_form(&self) -> String {
        let mut radicand = &self.trace * &self.trace - BigInt::from(4);
        let mut outside = BigInt::one();
        for f in 2u32..1000 {
            let sq = BigInt::from(f * f);
            while (&radicand % &sq).is_zero() {
                radicand /= &sq;
                outside *= f;
            }
        }
        let (whole, coefficient, halved) = if self.trace.is_even() && outside.is_even() {
            (&self.trace / 2, &outside / 2, false)
        } else {
            (self.trace.clone(), outside, true)
        };
        let root = if coefficient.is_one() { format!("√{radicand}") } else { format!("{coefficient}√{radicand}") };
        if halved { format!("({whole} + {root})/2") } else { format!("{whole} + {root}") }
    }

    /// Trace of the square of the matrix class: `tr² − 2`.
    pub fn squared_trace(&self) -> BigInt {
        &self.trace * &self.trace - BigInt::from(2)
    }
}

impl fmt::Display for Dilatation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {:.12}", self.closed_form(), self.value)
    }
}

/// Exact dilatation of the 3-braid represented by a pA word.
pub fn exact_dilatation(w: &PaWord) -> Result<Dilatation, PaWordError> {
    let m = transition_matrix(w);
    debug_assert!(m.determinant().is_one());
    debug_assert!(m.entries.iter().flatten().all(|e| !e.is_negative()));
    Dilatation::from_trace(m.trace())
}
