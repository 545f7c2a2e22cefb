//! Integral piecewise-linear action of braids on curve coordinates of the
//! punctured disk, an entropy estimator built on it, and a word-problem
//! oracle.
//!
//! A curve system on the `n`-punctured disk is stored as `(a, b)` with
//! `n − 2` integers each. Braids act letter by letter through max-plus
//! update rules, so the action is exact and invertible. The kernel of the
//! action is generated by the full twist.
//!
//! The estimator iterates the action, tracks `log(‖v_{k+1}‖₁ / ‖v_k‖₁)`,
//! accelerates it with Aitken's Δ² process and periodically refines the
//! value: it linearises the action at the current vector (the action is
//! linear on cones), finds the eigenvector nearest the current estimate by
//! shifted inverse iteration and accepts the eigenvalue only if the exact
//! action maps that eigenvector to the same multiple of itself.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::braid::BraidWord;
use crate::numeric::{abs_sum, ln_biguint, LN_2};

/// Default estimator tolerance on `log λ`.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 512;

/// Renormalise once coordinates exceed this many bits...
const RENORM_BITS: u64 = 512;
/// ...bringing them back down to this many.
const RENORM_TARGET_BITS: u64 = 256;
/// Consecutive small accelerated differences needed by the Aitken rule.
const ACCEL_WINDOW: usize = 4;
/// First iteration at which a linearised refinement is attempted, and the
/// spacing between attempts.
const REFINE_START: usize = 6;
const REFINE_EVERY: usize = 6;
/// Relative residual allowed when checking a candidate eigenvector against
/// the exact action.
const EIGEN_RESIDUAL: f64 = 1e-9;
/// Minimal cosine between the candidate eigenvector and the iterate.
const EIGEN_MIN_COSINE: f64 = 0.5;

/// Errors raised by the action and the estimator.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EntropyError {
    /// The braid and the coordinates have different strand counts.
    #[error("braid has {braid} strands but coordinates describe {coords}")]
    DegreeMismatch {
        /// Strands of the braid.
        braid: usize,
        /// Strands implied by the coordinates.
        coords: usize,
    },
    /// Coordinates need at least three punctures.
    #[error("curve coordinates need at least 3 strands, got {0}")]
    DegreeTooSmall(usize),
    /// The coordinates describe no curve.
    #[error("seed curve system is empty")]
    EmptySeed,
    /// Coordinates are defined for disk braids only.
    #[error("spherical braids have no disk action; use the disk lift explicitly")]
    Spherical,
    /// A pill curve needs `1 ≤ first < last ≤ n`.
    #[error("no curve encloses punctures {first}..={last} among {n}")]
    BadPill {
        /// First enclosed puncture.
        first: usize,
        /// Last enclosed puncture.
        last: usize,
        /// Number of punctures.
        n: usize,
    },
    /// Tolerance must be positive and finite.
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    /// The estimate did not converge.
    #[error("entropy estimate did not converge after {} iterations (last delta {:e})", .0.iterations, .0.last_delta)]
    NotConverged(Box<EntropyEstimate>),
}

/// A curve system on the `n`-punctured disk in `(a, b)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurveCoordinates {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl CurveCoordinates {
    /// Coordinates from two equal-length vectors (length `n − 2`).
    pub fn new(a: Vec<BigInt>, b: Vec<BigInt>) -> Result<Self, EntropyError> {
        if a.len() != b.len() {
            return Err(EntropyError::DegreeMismatch { braid: a.len() + 2, coords: b.len() + 2 });
        }
        if a.is_empty() {
            return Err(EntropyError::DegreeTooSmall(2));
        }
        Ok(Self { a, b })
    }

    /// Coordinates from machine integers.
    pub fn from_i64(a: &[i64], b: &[i64]) -> Result<Self, EntropyError> {
        Self::new(a.iter().map(|&x| x.into()).collect(), b.iter().map(|&x| x.into()).collect())
    }

    /// The round curve enclosing punctures `first..=last`.
    pub fn pill(n: usize, first: usize, last: usize) -> Result<Self, EntropyError> {
        if n < 3 {
            return Err(EntropyError::DegreeTooSmall(n));
        }
        if first == 0 || first >= last || last > n {
            return Err(EntropyError::BadPill { first, last, n });
        }
        let mut b = vec![BigInt::zero(); n - 2];
        if last - 1 <= n - 2 {
            b[last - 2] += 1;
        }
        if first >= 2 {
            b[first - 2] -= 1;
        }
        Ok(Self { a: vec![BigInt::zero(); n - 2], b })
    }

    /// The default seed: the curve around punctures 1 and 2.
    pub fn default_seed(n: usize) -> Result<Self, EntropyError> {
        Self::pill(n, 1, 2)
    }

    /// Number of punctures described.
    pub fn degree(&self) -> usize {
        self.a.len() + 2
    }

    /// The `a` half.
    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    /// The `b` half.
    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// True when every coordinate vanishes.
    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(Zero::is_zero)
    }

    fn flat(&self) -> Vec<BigInt> {
        self.a.iter().chain(&self.b).cloned().collect()
    }

    fn from_flat(mut flat: Vec<BigInt>) -> Self {
        let b = flat.split_off(flat.len() / 2);
        Self { a: flat, b }
    }

    fn ln_norm(&self) -> f64 {
        ln_biguint(&(abs_sum(&self.a) + abs_sum(&self.b)))
    }

    fn max_bits(&self) -> u64 {
        self.a.iter().chain(&self.b).map(|x| x.bits()).max().unwrap_or(0)
    }

    fn shift_down(&mut self, s: u64) {
        for x in self.a.iter_mut().chain(self.b.iter_mut()) {
            *x = &*x >> s;
        }
    }
}

/// Values the max-plus rules can be evaluated on.
trait PlValue: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// `max(x, 0)`
    fn pos(&self) -> Self;
    /// `min(x, 0)`
    fn neg(&self) -> Self;
}

impl PlValue for BigInt {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn pos(&self) -> Self {
        if self.is_positive() { self.clone() } else { BigInt::zero() }
    }
    fn neg(&self) -> Self {
        if self.is_negative() { self.clone() } else { BigInt::zero() }
    }
}

/// A value together with its gradient with respect to the starting vector;
/// the branch of every `max`/`min` is decided by the exact value.
#[derive(Clone)]
struct Tangent {
    value: BigInt,
    grad: Vec<f64>,
}

impl Tangent {
    fn zero_like(&self) -> Self {
        Self { value: BigInt::zero(), grad: vec![0.0; self.grad.len()] }
    }
}

impl PlValue for Tangent {
    fn add(&self, o: &Self) -> Self {
        Self { value: &self.value + &o.value, grad: self.grad.iter().zip(&o.grad).map(|(x, y)| x + y).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        Self { value: &self.value - &o.value, grad: self.grad.iter().zip(&o.grad).map(|(x, y)| x - y).collect() }
    }
    fn pos(&self) -> Self {
        if self.value.is_positive() { self.clone() } else { self.zero_like() }
    }
    fn neg(&self) -> Self {
        if self.value.is_negative() { self.clone() } else { self.zero_like() }
    }
}

/// Applies one letter to `(a, b)` in place; `n` is the strand count.
fn apply_letter<T: PlValue>(a: &mut [T], b: &mut [T], n: usize, letter: i32) {
    let i = letter.unsigned_abs() as usize;
    let positive = letter > 0;
    if i == 1 || i == n - 1 {
        let k = if i == 1 { 0 } else { n - 3 };
        let (ak, bk) = (a[k].clone(), b[k].clone());
        let (na, nb) = match (i == 1, positive) {
            (true, true) => {
                let t = ak.add(&bk.pos());
                (t.pos().sub(&bk), t)
            }
            (false, true) => {
                let t = ak.add(&bk.neg());
                (t.neg().sub(&bk), t)
            }
            (true, false) => {
                let t = bk.pos().sub(&ak);
                (bk.sub(&t.pos()), t)
            }
            (false, false) => {
                let t = bk.neg().sub(&ak);
                (bk.sub(&t.neg()), t)
            }
        };
        a[k] = na;
        b[k] = nb;
        // in B_3 both generators act on the single pair
        return;
    }
    let (m, q) = (i - 2, i - 1);
    let (am, bm, ai, bi) = (a[m].clone(), b[m].clone(), a[q].clone(), b[q].clone());
    let (bi_p, bi_n, bm_p, bm_n) = (bi.pos(), bi.neg(), bm.pos(), bm.neg());
    if positive {
        let c = am.sub(&ai).sub(&bi_p).add(&bm_n);
        let c_n = c.neg();
        a[m] = am.sub(&bm_p).sub(&bi_p.add(&c).pos());
        b[m] = bi.add(&c_n);
        a[q] = ai.sub(&bi_n).sub(&bm_n.sub(&c).neg());
        b[q] = bm.sub(&c_n);
    } else {
        let d = am.sub(&ai).add(&bi_p).sub(&bm_n);
        let d_p = d.pos();
        a[m] = am.add(&bm_p).add(&bi_p.sub(&d).pos());
        b[m] = bi.sub(&d_p);
        a[q] = ai.add(&bi_n).add(&bm_n.add(&d).neg());
        b[q] = bm.add(&d_p);
    }
}

fn check_degrees(braid: &BraidWord, v: &CurveCoordinates) -> Result<(), EntropyError> {
    if braid.is_spherical() {
        return Err(EntropyError::Spherical);
    }
    if braid.degree() != v.degree() {
        return Err(EntropyError::DegreeMismatch { braid: braid.degree(), coords: v.degree() });
    }
    Ok(())
}

/// Image of a curve system under a braid (letters applied left to right).
pub fn act(braid: &BraidWord, v: &CurveCoordinates) -> Result<CurveCoordinates, EntropyError> {
    check_degrees(braid, v)?;
    let mut out = v.clone();
    act_in_place(braid, &mut out);
    Ok(out)
}

fn act_in_place(braid: &BraidWord, v: &mut CurveCoordinates) {
    let n = braid.degree();
    for &l in braid.letters() {
        apply_letter(&mut v.a, &mut v.b, n, l);
    }
}

/// Gradient of the action at `v`, as a dense row-major matrix in the flat
/// ordering `(a₁..a_{n−2}, b₁..b_{n−2})`. The action coincides with this
/// linear map on a closed cone containing `v`.
fn linearise(braid: &BraidWord, v: &CurveCoordinates) -> Vec<Vec<f64>> {
    let dim = 2 * v.a.len();
    let seed = |idx: usize, value: &BigInt| {
        let mut grad = vec![0.0; dim];
        grad[idx] = 1.0;
        Tangent { value: value.clone(), grad }
    };
    let half = v.a.len();
    let mut a: Vec<Tangent> = v.a.iter().enumerate().map(|(i, x)| seed(i, x)).collect();
    let mut b: Vec<Tangent> = v.b.iter().enumerate().map(|(i, x)| seed(half + i, x)).collect();
    let n = braid.degree();
    for &l in braid.letters() {
        apply_letter(&mut a, &mut b, n, l);
    }
    a.into_iter().chain(b).map(|t| t.grad).collect()
}

/// Solves `(m − shift·I) x = rhs` by Gaussian elimination with partial
/// pivoting. Returns `None` when the shifted matrix is numerically singular.
fn solve_shifted(m: &[Vec<f64>], shift: f64, rhs: &[f64]) -> Option<Vec<f64>> {
    let dim = rhs.len();
    let mut aug: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r[i] -= shift;
            r.push(rhs[i]);
            r
        })
        .collect();
    let scale = m.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs())).max(shift.abs()).max(1.0);
    for col in 0..dim {
        let pivot = (col..dim).max_by(|&x, &y| aug[x][col].abs().total_cmp(&aug[y][col].abs()))?;
        if aug[pivot][col].abs() <= scale * 1e-300 {
            return None;
        }
        aug.swap(col, pivot);
        for row in col + 1..dim {
            let f = aug[row][col] / aug[col][col];
            if f != 0.0 {
                let (upper, lower) = aug.split_at_mut(row);
                for (target, source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *target -= f * source;
                }
            }
        }
    }
    let mut x = vec![0.0; dim];
    for row in (0..dim).rev() {
        let s: f64 = (row + 1..dim).map(|k| aug[row][k] * x[k]).sum();
        x[row] = (aug[row][dim] - s) / aug[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn normalised(x: &[f64]) -> Option<Vec<f64>> {
    let norm = libm::sqrt(dot(x, x));
    (norm > 0.0 && norm.is_finite()).then(|| x.iter().map(|v| v / norm).collect())
}

fn to_unit_f64(v: &CurveCoordinates) -> Option<Vec<f64>> {
    let flat = v.flat();
    let bits = flat.iter().map(|x| x.bits()).max().unwrap_or(0);
    let shift = bits.saturating_sub(60);
    let approx: Vec<f64> = flat.iter().map(|x| (x >> shift).to_f64().unwrap_or(0.0)).collect();
    normalised(&approx)
}

/// Shifted inverse iteration on the linearisation at `v`, followed by an
/// exact check of the candidate eigenvector. Returns `log λ` on success.
fn refine(braid: &BraidWord, v: &CurveCoordinates, guess: f64) -> Option<f64> {
    let m = linearise(braid, v);
    let start = to_unit_f64(v)?;
    let mut shift = guess;
    let mut x = start.clone();
    let mut lambda = guess;
    for _ in 0..8 {
        let y = solve_shifted(&m, shift, &x).or_else(|| solve_shifted(&m, shift * (1.0 + 1e-7), &x))?;
        x = normalised(&y)?;
        if dot(&x, &start) < 0.0 {
            x.iter_mut().for_each(|c| *c = -*c);
        }
        let mx = mat_vec(&m, &x);
        let next = dot(&x, &mx);
        let settled = (next - lambda).abs() <= 1e-15 * next.abs().max(1.0);
        lambda = next;
        shift = next;
        if settled {
            break;
        }
    }
    if !(lambda.is_finite() && lambda >= 1.0 - 1e-12) || dot(&x, &start) < EIGEN_MIN_COSINE {
        return None;
    }
    // exact check: the true action must scale the candidate by λ
    let scale = (1u64 << 60) as f64;
    let mut ints = Vec::with_capacity(x.len());
    for &c in &x {
        ints.push(BigInt::from_f64(libm::round(c * scale))?);
    }
    let candidate = CurveCoordinates::from_flat(ints);
    let mut image = candidate.clone();
    act_in_place(braid, &mut image);
    let img: Vec<f64> = image.flat().iter().map(|z| z.to_f64().unwrap_or(f64::INFINITY)).collect();
    let cand: Vec<f64> = candidate.flat().iter().map(|z| z.to_f64().unwrap_or(0.0)).collect();
    let residual: f64 = img.iter().zip(&cand).map(|(y, c)| (y - lambda * c).abs()).sum();
    let size: f64 = img.iter().map(|y| y.abs()).sum();
    if !(size.is_finite() && size > 0.0) || residual > EIGEN_RESIDUAL * size {
        return None;
    }
    Some(libm::log(lambda).max(0.0))
}

/// How the estimator stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StopRule {
    /// The seed came back exactly: periodic behaviour, zero entropy.
    Periodic,
    /// Two successive verified eigenvector refinements agreed.
    Refined,
    /// Successive accelerated estimates agreed.
    Accelerated,
    /// The iteration cap was reached.
    IterationCap,
}

/// Result of [`entropy_estimate`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyEstimate {
    /// The estimate of `log λ` (never negative).
    pub value: f64,
    /// Iterations of the braid action performed.
    pub iterations: usize,
    /// Difference between the last two compared estimates.
    pub last_delta: f64,
    /// Total log of the renormalisation factors divided out.
    pub accumulated_scale: f64,
    /// Whether the stopping rule fired before the cap.
    pub converged: bool,
    /// Which rule stopped the iteration.
    pub stop_rule: StopRule,
}

/// Estimator settings.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    /// Tolerance on `log λ`.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Starting curve system; the curve around punctures 1, 2 when `None`.
    pub seed: Option<CurveCoordinates>,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER, seed: None }
    }
}

impl EstimatorConfig {
    /// Default settings with a different tolerance.
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

fn aitken(x0: f64, x1: f64, x2: f64) -> f64 {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let den = d2 - d1;
    if den.abs() <= f64::EPSILON * (x2.abs() + 1.0) {
        return x2;
    }
    let acc = x2 - d2 * d2 / den;
    if acc.is_finite() { acc } else { x2 }
}

/// Estimates `log λ` for a disk braid with at least three strands.
pub fn entropy_estimate(braid: &BraidWord, config: &EstimatorConfig) -> Result<EntropyEstimate, EntropyError> {
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(EntropyError::BadTolerance(config.tol));
    }
    if braid.is_spherical() {
        return Err(EntropyError::Spherical);
    }
    if braid.degree() < 3 {
        return Err(EntropyError::DegreeTooSmall(braid.degree()));
    }
    let seed = match &config.seed {
        Some(s) => s.clone(),
        None => CurveCoordinates::default_seed(braid.degree())?,
    };
    check_degrees(braid, &seed)?;
    if seed.is_zero() {
        return Err(EntropyError::EmptySeed);
    }
    let tol = config.tol;
    let mut v = seed.clone();
    let mut ln_v = v.ln_norm();
    let mut scale = 0.0;
    let mut raw: Vec<f64> = Vec::new();
    let mut acc: Vec<f64> = Vec::new();
    let mut calm = 0usize;
    let mut last_refined: Option<f64> = None;
    let mut next_refine = REFINE_START;
    let mut last_delta = f64::INFINITY;

    let finish = |value: f64, iterations, last_delta, scale, converged, stop_rule| EntropyEstimate {
        value: if value > 0.0 { value } else { 0.0 },
        iterations,
        last_delta,
        accumulated_scale: scale,
        converged,
        stop_rule,
    };

    for k in 1..=config.max_iter {
        act_in_place(braid, &mut v);
        if scale == 0.0 && v == seed {
            return Ok(finish(0.0, k, 0.0, scale, true, StopRule::Periodic));
        }
        let mut ln_w = v.ln_norm();
        raw.push(ln_w - ln_v);
        let bits = v.max_bits();
        if bits > RENORM_BITS {
            let s = bits - RENORM_TARGET_BITS;
            v.shift_down(s);
            scale += s as f64 * LN_2;
            ln_w = v.ln_norm();
        }
        ln_v = ln_w;

        let r = raw.len();
        let estimate = if r >= 3 { aitken(raw[r - 3], raw[r - 2], raw[r - 1]) } else { raw[r - 1] };
        if let Some(&prev) = acc.last() {
            let delta = (estimate - prev).abs();
            calm = if delta < tol { calm + 1 } else { 0 };
            last_delta = delta;
        }
        acc.push(estimate);
        // a flat stretch means the seed has not been stretched yet; zero
        // entropy is only accepted through exact periodicity
        if calm >= ACCEL_WINDOW && estimate > tol {
            return Ok(finish(estimate, k, last_delta, scale, true, StopRule::Accelerated));
        }

        if k >= next_refine {
            next_refine = k + REFINE_EVERY;
            let guess = libm::exp(estimate.max(raw[r - 1]).max(0.0));
            match refine(braid, &v, guess) {
                Some(value) => {
                    if let Some(prev) = last_refined {
                        let delta = (value - prev).abs();
                        if delta < tol {
                            return Ok(finish(value, k, delta, scale, true, StopRule::Refined));
                        }
                    }
                    last_refined = Some(value);
                }
                None => last_refined = None,
            }
        }
    }
    let value = acc.last().copied().unwrap_or(0.0);
    Ok(finish(value, config.max_iter, last_delta, scale, false, StopRule::IterationCap))
}

/// `(n − 1) · log λ`, failing if the estimate did not converge.
pub fn normalized_entropy(braid: &BraidWord, config: &EstimatorConfig) -> Result<f64, EntropyError> {
    let est = entropy_estimate(braid, config)?;
    if !est.converged {
        return Err(EntropyError::NotConverged(Box::new(est)));
    }
    Ok((braid.degree() - 1) as f64 * est.value)
}

/// What told two braids apart.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Witness {
    /// Different strand counts.
    Degree,
    /// One spherical, one not.
    Sphericity,
    /// Different permutations.
    Permutation,
    /// Different exponent sums.
    ExponentSum,
    /// Different images of the curve around punctures `first..=last`.
    Curve {
        /// First enclosed puncture.
        first: usize,
        /// Last enclosed puncture.
        last: usize,
    },
}

/// Verdict of [`braids_equal`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Equality {
    /// Every test agreed.
    Equal,
    /// A test failed.
    Distinct(Witness),
}

impl Equality {
    /// True for [`Equality::Equal`].
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal)
    }
}

/// Word-problem oracle.
///
/// Compares permutations, exponent sums and the images of every round curve
/// enclosing a proper block of consecutive punctures. The action kills only
/// powers of the full twist, which the exponent sum detects. Spherical words
/// are compared through their disk lifts, so `Distinct` for two spherical
/// words means distinct as disk braids.
pub fn braids_equal(x: &BraidWord, y: &BraidWord) -> Equality {
    if x.degree() != y.degree() {
        return Equality::Distinct(Witness::Degree);
    }
    if x.is_spherical() != y.is_spherical() {
        return Equality::Distinct(Witness::Sphericity);
    }
    if x.permutation() != y.permutation() {
        return Equality::Distinct(Witness::Permutation);
    }
    if x.exponent_sum() != y.exponent_sum() {
        return Equality::Distinct(Witness::ExponentSum);
    }
    let n = x.degree();
    if n < 3 {
        return Equality::Equal;
    }
    let (x, y) = (x.disk_lift(), y.disk_lift());
    for first in 1..n {
        for last in first + 1..=n {
            if first == 1 && last == n {
                continue;
            }
            let curve = CurveCoordinates::pill(n, first, last).expect("valid pill");
            let (mut cx, mut cy) = (curve.clone(), curve);
            act_in_place(&x, &mut cx);
            act_in_place(&y, &mut cy);
            if cx != cy {
                return Equality::Distinct(Witness::Curve { first, last });
            }
        }
    }
    Equality::Equal
}
