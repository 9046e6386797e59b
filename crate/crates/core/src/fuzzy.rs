//! Fuzzy numbers stored as level sets.
//!
//! A fuzzy number `u` is kept as the pair of endpoint functions
//! `r -> [u_-(r), u_+(r)]` sampled on a grid `0 = r_0 < ... < r_M = 1`.
//! Endpoints are treated as piecewise linear in `r`, so triangular numbers
//! (whose endpoints are affine) are represented exactly on any grid.
//!
//! Addition and scalar multiplication act level-wise as interval
//! arithmetic. The Hukuhara difference is the partial inverse of addition
//! and is reported as [`Error::NotExists`] when the level-wise endpoint
//! difference is not a valid fuzzy number.

use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of level intervals `M` (the grid has `M + 1` levels).
pub const DEFAULT_LEVEL_COUNT: usize = 64;

/// Slack for monotonicity / ordering violations that are repaired by
/// clamping instead of rejected. Scaled by `max(1, ||u||, ||v||)`.
pub const MONOTONE_TOLERANCE: f64 = 1e-12;

/// Uniform level grid with `m + 1` entries `i / m`.
pub fn uniform_levels(m: usize) -> Vec<f64> {
    assert!(m >= 1, "level grid needs at least one interval");
    (0..=m).map(|i| i as f64 / m as f64).collect()
}

fn check_levels(levels: &[f64]) -> Result<()> {
    if levels.len() < 2 {
        return Err(Error::InvalidNumber("level grid needs at least two levels".into()));
    }
    if levels[0] != 0.0 || levels[levels.len() - 1] != 1.0 {
        return Err(Error::InvalidNumber("level grid must start at 0 and end at 1".into()));
    }
    if levels.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidNumber("level grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Linear interpolation of `values` (sampled on `grid`) at `x`, clamped to
/// the grid range.
pub(crate) fn interpolate(grid: &[f64], values: &[f64], x: f64) -> f64 {
    let n = grid.len();
    if x <= grid[0] {
        return values[0];
    }
    if x >= grid[n - 1] {
        return values[n - 1];
    }
    let j = grid.partition_point(|&g| g <= x);
    let (x0, x1) = (grid[j - 1], grid[j]);
    if x == x0 {
        return values[j - 1];
    }
    let w = (x - x0) / (x1 - x0);
    values[j - 1] + w * (values[j] - values[j - 1])
}

/// Sorted union of two grids, exact duplicates removed.
pub(crate) fn union_grid(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), Some(&y)) if y < x => {
                j += 1;
                y
            }
            (Some(&x), Some(_)) => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

/// Trapezoid rule for `values` sampled on `grid`. Exact for piecewise
/// linear data.
pub(crate) fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2).zip(values.windows(2)).map(|(g, v)| 0.5 * (g[1] - g[0]) * (v[0] + v[1])).sum()
}

/// A fuzzy number in level-set form.
#[derive(Clone, PartialEq)]
pub struct FuzzyNumber {
    levels: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl fmt::Debug for FuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.levels.len() - 1;
        write!(
            f,
            "FuzzyNumber([{}, {}] ⊇ [{}, {}], M={})",
            self.lower[0], self.upper[0], self.lower[m], self.upper[m], m
        )
    }
}

impl FuzzyNumber {
    /// Validating constructor. Endpoint arrays must be finite, nested and of
    /// the same length as `levels`.
    pub fn new(levels: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_levels(&levels)?;
        if lower.len() != levels.len() || upper.len() != levels.len() {
            return Err(Error::InvalidNumber(format!(
                "expected {} endpoints per side, got {} lower and {} upper",
                levels.len(),
                lower.len(),
                upper.len()
            )));
        }
        if lower.iter().chain(upper.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidNumber("non-finite endpoint".into()));
        }
        if let Some(i) = lower.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidNumber(format!("lower endpoint decreases at level index {i}")));
        }
        if let Some(i) = upper.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidNumber(format!("upper endpoint increases at level index {i}")));
        }
        let m = levels.len() - 1;
        if lower[m] > upper[m] {
            return Err(Error::InvalidNumber("empty core: lower(1) > upper(1)".into()));
        }
        Ok(Self { levels, lower, upper })
    }

    pub(crate) fn from_parts_unchecked(levels: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        debug_assert_eq!(levels.len(), lower.len());
        debug_assert_eq!(levels.len(), upper.len());
        Self { levels, lower, upper }
    }

    /// Builds a number on the uniform grid with `m` intervals from a
    /// function `r -> (lower, upper)`.
    pub fn from_level_fn(m: usize, f: impl Fn(f64) -> (f64, f64)) -> Result<Self> {
        let levels = uniform_levels(m);
        let (lower, upper) = levels.iter().map(|&r| f(r)).unzip();
        Self::new(levels, lower, upper)
    }

    /// Degenerate number `u_-(r) = u_+(r) = x` on the default grid.
    pub fn crisp(x: f64) -> Self {
        Self::crisp_on(x, uniform_levels(DEFAULT_LEVEL_COUNT))
    }

    pub fn crisp_on(x: f64, levels: Vec<f64>) -> Self {
        let n = levels.len();
        Self { levels, lower: vec![x; n], upper: vec![x; n] }
    }

    /// The additive identity on the default grid.
    pub fn zero() -> Self {
        Self::crisp(0.0)
    }

    /// The additive identity on this number's grid.
    pub fn zero_like(&self) -> Self {
        Self::crisp_on(0.0, self.levels.clone())
    }

    /// Triangular number `(left, center, right)` on the uniform grid with
    /// `m` intervals.
    pub fn triangular(left: f64, center: f64, right: f64, m: usize) -> Result<Self> {
        Triangular::new(left, center, right)?.to_fuzzy(m)
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Number of level intervals `M`.
    pub fn level_count(&self) -> usize {
        self.levels.len() - 1
    }

    /// Level set `[u_-(r_i), u_+(r_i)]` at grid index `i`.
    pub fn cut(&self, i: usize) -> (f64, f64) {
        (self.lower[i], self.upper[i])
    }

    /// Level set at an arbitrary `r in [0, 1]`, linearly interpolated.
    pub fn cut_at(&self, r: f64) -> (f64, f64) {
        (interpolate(&self.levels, &self.lower, r), interpolate(&self.levels, &self.upper, r))
    }

    /// The closure of the support, `[u]^0`.
    pub fn support(&self) -> (f64, f64) {
        self.cut(0)
    }

    /// The core, `[u]^1`.
    pub fn core(&self) -> (f64, f64) {
        self.cut(self.level_count())
    }

    pub fn is_crisp(&self) -> bool {
        self.lower[0] == self.upper[0]
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.levels == other.levels
    }

    /// Re-expresses the number on another level grid by linear
    /// interpolation of the endpoints. Lossless for piecewise-linear
    /// endpoints whose breakpoints are in `levels`.
    pub fn resample(&self, levels: &[f64]) -> Self {
        if levels == self.levels.as_slice() {
            return self.clone();
        }
        let lower = levels.iter().map(|&r| interpolate(&self.levels, &self.lower, r)).collect();
        let upper = levels.iter().map(|&r| interpolate(&self.levels, &self.upper, r)).collect();
        Self { levels: levels.to_vec(), lower, upper }
    }

    /// Both operands on a common grid (the union grid when they differ).
    pub fn align<'a>(u: &'a Self, v: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if u.same_grid(v) {
            (Cow::Borrowed(u), Cow::Borrowed(v))
        } else {
            let grid = union_grid(&u.levels, &v.levels);
            (Cow::Owned(u.resample(&grid)), Cow::Owned(v.resample(&grid)))
        }
    }

    /// Scalar multiplication `λ ⊙ u`; negative factors swap the endpoints.
    pub fn scale(&self, lambda: f64) -> Self {
        if lambda == 0.0 {
            return self.zero_like();
        }
        let lo = self.lower.iter().map(|x| lambda * x);
        let hi = self.upper.iter().map(|x| lambda * x);
        let (lower, upper) = if lambda > 0.0 { (lo.collect(), hi.collect()) } else { (hi.collect(), lo.collect()) };
        Self { levels: self.levels.clone(), lower, upper }
    }

    /// Level-wise interval sum `u ⊕ v`.
    pub fn plus(&self, other: &Self) -> Self {
        let (u, v) = Self::align(self, other);
        let lower = u.lower.iter().zip(&v.lower).map(|(a, b)| a + b).collect();
        let upper = u.upper.iter().zip(&v.upper).map(|(a, b)| a + b).collect();
        Self { levels: u.levels.clone(), lower, upper }
    }

    /// Hukuhara difference `u ⊖ v`: the `w` with `v ⊕ w = u`, if any.
    ///
    /// Violations of nesting up to `MONOTONE_TOLERANCE * max(1, ||u||, ||v||)`
    /// are clamped away; anything larger is [`Error::NotExists`].
    pub fn hukuhara_diff(&self, other: &Self) -> Result<Self> {
        let (u, v) = Self::align(self, other);
        let mut lower: Vec<f64> = u.lower.iter().zip(&v.lower).map(|(a, b)| a - b).collect();
        let mut upper: Vec<f64> = u.upper.iter().zip(&v.upper).map(|(a, b)| a - b).collect();
        let m = lower.len() - 1;

        let mut worst = (0.0_f64, 0_usize);
        for i in 0..m {
            let viol = (lower[i] - lower[i + 1]).max(upper[i + 1] - upper[i]);
            if viol > worst.0 {
                worst = (viol, i);
            }
        }
        if lower[m] - upper[m] > worst.0 {
            worst = (lower[m] - upper[m], m);
        }
        let eps = MONOTONE_TOLERANCE * 1f64.max(u.norm()).max(v.norm());
        if !(worst.0 <= eps) {
            return Err(Error::NotExists { level: worst.1, violation: worst.0 });
        }
        if worst.0 > 0.0 {
            for i in 1..=m {
                lower[i] = lower[i].max(lower[i - 1]);
                upper[i] = upper[i].min(upper[i - 1]);
            }
            if lower[m] > upper[m] {
                let mid = 0.5 * (lower[m] + upper[m]);
                lower.iter_mut().for_each(|x| *x = x.min(mid));
                upper.iter_mut().for_each(|x| *x = x.max(mid));
            }
        }
        Ok(Self { levels: u.levels.clone(), lower, upper })
    }

    /// The metric `D(u, v) = sup_r max(|u_- - v_-|, |u_+ - v_+|)`.
    pub fn distance(&self, other: &Self) -> f64 {
        let (u, v) = Self::align(self, other);
        u.lower.iter().zip(&v.lower).chain(u.upper.iter().zip(&v.upper)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// `||u|| = D(u, 0)`.
    pub fn norm(&self) -> f64 {
        self.lower.iter().chain(&self.upper).map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Membership degree of `x`, reconstructed from the level sets with
    /// linear interpolation between adjacent cuts.
    pub fn membership(&self, x: f64) -> f64 {
        let m = self.level_count();
        let (lo0, hi0) = self.support();
        if x < lo0 || x > hi0 {
            return 0.0;
        }
        let (lo1, hi1) = self.core();
        if lo1 <= x && x <= hi1 {
            return 1.0;
        }
        let lv = &self.levels;
        if x < lo1 {
            // last level whose lower endpoint is still <= x
            let i = self.lower.partition_point(|&l| l <= x) - 1;
            debug_assert!(i < m);
            let (a, b) = (self.lower[i], self.lower[i + 1]);
            lv[i] + (lv[i + 1] - lv[i]) * (x - a) / (b - a)
        } else {
            let i = self.upper.partition_point(|&u| u >= x) - 1;
            debug_assert!(i < m);
            let (a, b) = (self.upper[i], self.upper[i + 1]);
            lv[i] + (lv[i + 1] - lv[i]) * (a - x) / (a - b)
        }
    }

    /// `∫_0^1 u_-(r) dr`.
    pub fn lower_integral(&self) -> f64 {
        trapezoid(&self.levels, &self.lower)
    }

    /// `∫_0^1 u_+(r) dr`.
    pub fn upper_integral(&self) -> f64 {
        trapezoid(&self.levels, &self.upper)
    }

    /// Largest violation of the level-set invariants (0 for valid numbers).
    pub fn invariant_violation(&self) -> f64 {
        let m = self.level_count();
        let mut worst = (self.lower[m] - self.upper[m]).max(0.0);
        for i in 0..m {
            worst = worst.max(self.lower[i] - self.lower[i + 1]).max(self.upper[i + 1] - self.upper[i]);
        }
        if self.lower.iter().chain(&self.upper).any(|x| !x.is_finite()) {
            return f64::INFINITY;
        }
        worst
    }
}

impl Add<&FuzzyNumber> for &FuzzyNumber {
    type Output = FuzzyNumber;

    fn add(self, rhs: &FuzzyNumber) -> FuzzyNumber {
        self.plus(rhs)
    }
}

impl Add for FuzzyNumber {
    type Output = FuzzyNumber;

    fn add(self, rhs: FuzzyNumber) -> FuzzyNumber {
        self.plus(&rhs)
    }
}

impl Mul<&FuzzyNumber> for f64 {
    type Output = FuzzyNumber;

    fn mul(self, rhs: &FuzzyNumber) -> FuzzyNumber {
        rhs.scale(self)
    }
}

impl Mul<FuzzyNumber> for f64 {
    type Output = FuzzyNumber;

    fn mul(self, rhs: FuzzyNumber) -> FuzzyNumber {
        rhs.scale(self)
    }
}

impl Neg for &FuzzyNumber {
    type Output = FuzzyNumber;

    fn neg(self) -> FuzzyNumber {
        self.scale(-1.0)
    }
}

/// Constructor view for triangular numbers `(x_l, x_c, x_r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangular {
    pub left: f64,
    pub center: f64,
    pub right: f64,
}

impl Triangular {
    pub fn new(left: f64, center: f64, right: f64) -> Result<Self> {
        if !(left.is_finite() && center.is_finite() && right.is_finite()) {
            return Err(Error::InvalidNumber("non-finite triangular endpoint".into()));
        }
        if !(left <= center && center <= right) {
            return Err(Error::OrderViolation { left, center, right });
        }
        Ok(Self { left, center, right })
    }

    pub fn is_symmetric(&self) -> bool {
        self.center - self.left == self.right - self.center
    }

    /// `[x]^r = [x_c - (1 - r)(x_c - x_l), x_c + (1 - r)(x_r - x_c)]`.
    pub fn cut(&self, r: f64) -> (f64, f64) {
        (self.center - (1.0 - r) * (self.center - self.left), self.center + (1.0 - r) * (self.right - self.center))
    }

    pub fn to_fuzzy(&self, m: usize) -> Result<FuzzyNumber> {
        if m == 0 {
            return Err(Error::InvalidParameter("level count must be >= 1".into()));
        }
        let levels = uniform_levels(m);
        let (lower, upper) = levels.iter().map(|&r| self.cut(r)).unzip();
        Ok(FuzzyNumber::from_parts_unchecked(levels, lower, upper))
    }
}

/// Member of the symmetric triangular subclass: `(c - δ, c, c + δ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricTriangular {
    pub center: f64,
    pub spread: f64,
}

impl SymmetricTriangular {
    pub fn new(center: f64, spread: f64) -> Result<Self> {
        if !(center.is_finite() && spread.is_finite()) || spread < 0.0 {
            return Err(Error::InvalidNumber(format!("bad symmetric triangular ({center}, {spread})")));
        }
        Ok(Self { center, spread })
    }

    pub fn to_triangular(&self) -> Triangular {
        Triangular { left: self.center - self.spread, center: self.center, right: self.center + self.spread }
    }

    pub fn to_fuzzy(&self, m: usize) -> Result<FuzzyNumber> {
        let (c, d) = (self.center, self.spread);
        FuzzyNumber::from_level_fn(m, |r| (c - (1.0 - r) * d, c + (1.0 - r) * d))
    }
}

impl TryFrom<Triangular> for SymmetricTriangular {
    type Error = Error;

    fn try_from(t: Triangular) -> Result<Self> {
        if !t.is_symmetric() {
            return Err(Error::InvalidNumber(format!("{t:?} is not symmetric")));
        }
        Self::new(t.center, t.center - t.left)
    }
}

/// Which of the two Hukuhara differences was returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `x1 ⊖ x2`
    Forward,
    /// `x2 ⊖ x1`
    Reverse,
}

/// For symmetric triangular numbers at least one of `x1 ⊖ x2`, `x2 ⊖ x1`
/// exists; returns the forward one when both do.
pub fn ts_partial_diff(
    x1: &SymmetricTriangular,
    x2: &SymmetricTriangular,
    m: usize,
) -> Result<(Direction, FuzzyNumber)> {
    let (a, b) = (x1.to_fuzzy(m)?, x2.to_fuzzy(m)?);
    match a.hukuhara_diff(&b) {
        Ok(w) => Ok((Direction::Forward, w)),
        Err(Error::NotExists { .. }) => b.hukuhara_diff(&a).map(|w| (Direction::Reverse, w)),
        Err(e) => Err(e),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum FuzzyRepr {
    Full { levels: Vec<f64>, lower: Vec<f64>, upper: Vec<f64> },
    Tri { tri: [f64; 3] },
}

impl Serialize for FuzzyNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Full<'a> {
            levels: &'a [f64],
            lower: &'a [f64],
            upper: &'a [f64],
        }
        Full { levels: &self.levels, lower: &self.lower, upper: &self.upper }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FuzzyNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match FuzzyRepr::deserialize(d)? {
            FuzzyRepr::Full { levels, lower, upper } => {
                FuzzyNumber::new(levels, lower, upper).map_err(D::Error::custom)
            }
            FuzzyRepr::Tri { tri: [l, c, r] } => {
                FuzzyNumber::triangular(l, c, r, DEFAULT_LEVEL_COUNT).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tri(l: f64, c: f64, r: f64) -> FuzzyNumber {
        FuzzyNumber::triangular(l, c, r, DEFAULT_LEVEL_COUNT).unwrap()
    }

    /// Level-wise interval oracle: `[a, b] + [c, d]`, `λ [a, b]`.
    fn interval_sum(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
        (x.0 + y.0, x.1 + y.1)
    }

    fn interval_scale(l: f64, x: (f64, f64)) -> (f64, f64) {
        let (a, b) = (l * x.0, l * x.1);
        (a.min(b), a.max(b))
    }

    #[test]
    fn triangular_levels_match_formula() {
        let u = tri(0.0, 1.0, 2.0);
        for (i, &r) in u.levels().iter().enumerate() {
            assert_abs_diff_eq!(u.lower()[i], r, epsilon = 1e-15);
            assert_abs_diff_eq!(u.upper()[i], 2.0 - r, epsilon = 1e-15);
        }
        let c = tri(5.0, 5.0, 5.0);
        assert!(c.lower().iter().chain(c.upper()).all(|&x| x == 5.0));
        assert!(matches!(FuzzyNumber::triangular(2.0, 1.0, 0.0, 8), Err(Error::OrderViolation { .. })));
    }

    #[test]
    fn addition_matches_interval_oracle() {
        let (u, v) = (tri(0.0, 1.0, 2.0), tri(1.0, 2.0, 3.0));
        let w = &u + &v;
        for i in 0..=u.level_count() {
            let (lo, hi) = interval_sum(u.cut(i), v.cut(i));
            assert_abs_diff_eq!(w.lower()[i], lo, epsilon = 1e-15);
            assert_abs_diff_eq!(w.upper()[i], hi, epsilon = 1e-15);
        }
        assert!(w.distance(&tri(1.0, 3.0, 5.0)) < 1e-15);
        assert_eq!(&u + &FuzzyNumber::zero(), u);
        assert_eq!(&FuzzyNumber::crisp(2.0) + &FuzzyNumber::crisp(3.0), FuzzyNumber::crisp(5.0));
    }

    #[test]
    fn scalar_multiplication_matches_interval_oracle() {
        let u = tri(0.0, 1.0, 2.0);
        for lambda in [-1.0, 2.0, -0.3] {
            let w = u.scale(lambda);
            for i in 0..=u.level_count() {
                let (lo, hi) = interval_scale(lambda, u.cut(i));
                assert_abs_diff_eq!(w.lower()[i], lo, epsilon = 1e-15);
                assert_abs_diff_eq!(w.upper()[i], hi, epsilon = 1e-15);
            }
        }
        assert!(u.scale(-1.0).distance(&tri(-2.0, -1.0, 0.0)) < 1e-15);
        assert!(u.scale(2.0).distance(&tri(0.0, 2.0, 4.0)) < 1e-15);
        assert_eq!(u.scale(0.0), FuzzyNumber::zero());
    }

    #[test]
    fn hukuhara_difference_examples() {
        let w = tri(1.0, 3.0, 5.0).hukuhara_diff(&tri(0.0, 1.0, 2.0)).unwrap();
        assert!(w.distance(&tri(1.0, 2.0, 3.0)) < 1e-15);
        let u = tri(0.3, 1.0, 4.0);
        assert_eq!(u.hukuhara_diff(&u).unwrap(), FuzzyNumber::zero());
        assert!(matches!(FuzzyNumber::zero().hukuhara_diff(&tri(0.0, 1.0, 2.0)), Err(Error::NotExists { .. })));
    }

    #[test]
    fn hukuhara_difference_clamps_rounding_noise() {
        let v = tri(0.1, 0.2, 0.7);
        let w = tri(0.3, 0.3, 0.3);
        let u = &v + &w;
        let back = u.hukuhara_diff(&v).unwrap();
        assert_eq!(back.invariant_violation(), 0.0);
        assert!(back.distance(&w) < 1e-15);
    }

    #[test]
    fn metric_and_norm_examples() {
        assert_eq!(FuzzyNumber::crisp(1.5).distance(&FuzzyNumber::crisp(-2.0)), 3.5);
        let u = tri(0.0, 1.0, 2.0);
        assert_eq!(u.distance(&u), 0.0);
        assert_abs_diff_eq!(u.distance(&tri(1.0, 2.0, 3.0)), 1.0, epsilon = 1e-15);
        assert_eq!(FuzzyNumber::zero().norm(), 0.0);
        assert_eq!(u.norm(), 2.0);
        assert_eq!(FuzzyNumber::crisp(-3.0).norm(), 3.0);
    }

    #[test]
    fn membership_examples() {
        let u = tri(0.0, 1.0, 2.0);
        assert_abs_diff_eq!(u.membership(0.5), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(u.membership(1.7), 0.3, epsilon = 1e-12);
        assert_eq!(u.membership(3.0), 0.0);
        assert_eq!(u.membership(1.0), 1.0);
        // off-grid level
        let coarse = FuzzyNumber::triangular(0.0, 1.0, 2.0, 3).unwrap();
        assert_abs_diff_eq!(coarse.membership(0.5), 0.5, epsilon = 1e-15);
        assert_eq!(FuzzyNumber::crisp(2.0).membership(2.0), 1.0);
    }

    #[test]
    fn symmetric_triangular_partial_difference() {
        let x1 = SymmetricTriangular::new(1.0, 1.0).unwrap();
        let x2 = SymmetricTriangular::new(1.0, 0.5).unwrap();
        let (dir, w) = ts_partial_diff(&x1, &x2, DEFAULT_LEVEL_COUNT).unwrap();
        assert_eq!(dir, Direction::Forward);
        assert!(w.distance(&tri(-0.5, 0.0, 0.5)) < 1e-15);

        let (dir, w) = ts_partial_diff(&x1, &x1, DEFAULT_LEVEL_COUNT).unwrap();
        assert_eq!(dir, Direction::Forward);
        assert_eq!(w.norm(), 0.0);

        let (dir, w) = ts_partial_diff(&x2, &x1, DEFAULT_LEVEL_COUNT).unwrap();
        assert_eq!(dir, Direction::Reverse);
        assert!(w.distance(&tri(-0.5, 0.0, 0.5)) < 1e-15);
    }

    #[test]
    fn grid_mismatch_resamples_to_union() {
        let a = FuzzyNumber::triangular(0.0, 1.0, 2.0, 4).unwrap();
        let b = FuzzyNumber::triangular(1.0, 2.0, 3.0, 6).unwrap();
        let s = &a + &b;
        assert_eq!(s.levels().len(), union_grid(a.levels(), b.levels()).len());
        assert!(s.distance(&tri(1.0, 3.0, 5.0)) < 1e-14);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let lv = uniform_levels(2);
        assert!(FuzzyNumber::new(lv.clone(), vec![0.0, 1.0, 0.5], vec![2.0, 2.0, 2.0]).is_err());
        assert!(FuzzyNumber::new(lv.clone(), vec![0.0, 0.5, 1.0], vec![2.0, 2.5, 2.0]).is_err());
        assert!(FuzzyNumber::new(lv.clone(), vec![0.0, 0.5, 3.0], vec![4.0, 3.5, 2.0]).is_err());
        assert!(FuzzyNumber::new(lv.clone(), vec![0.0, f64::NAN, 1.0], vec![2.0; 3]).is_err());
        assert!(FuzzyNumber::new(vec![0.0, 0.7], vec![0.0; 2], vec![0.0; 2]).is_err());
    }

    #[test]
    fn json_codec() {
        let u: FuzzyNumber = serde_json::from_str(r#"{"tri":[0,1,2]}"#).unwrap();
        assert_eq!(u, tri(0.0, 1.0, 2.0));
        let v = FuzzyNumber::new(uniform_levels(2), vec![0.1, 0.2 + 1e-17, 1.0 / 3.0], vec![1e300, 7.0, 1.0 / 3.0])
            .unwrap();
        let back: FuzzyNumber = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        for (a, b) in v.lower().iter().chain(v.upper()).zip(back.lower().iter().chain(back.upper())) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert!(serde_json::from_str::<FuzzyNumber>(r#"{"tri":[2,1,0]}"#).is_err());
        assert!(serde_json::from_str::<FuzzyNumber>(r#"{"levels":[0,1],"lower":[1,0],"upper":[2,2]}"#).is_err());
    }
}
