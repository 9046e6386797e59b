//! Truncated-series evaluation of `e^{t⊙A}`, `cosh(t⊙A)` and `sinh(t⊙A)`.
//!
//! Series are summed term by term with `⊕`, exactly as written: no
//! coefficient merging and no scaling-and-squaring, since
//! `(a + b) ⊙ u = a ⊙ u ⊕ b ⊙ u` fails for mixed signs. The truncation
//! order comes from the tail of the scalar majorant built from the
//! operator's certified norm bound, so the distance to the limit is at
//! most `tol` for `||x|| <= 1` (and at most `tol` in absolute terms for
//! larger `x`, because the tolerance is divided by `||x||`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::Operator;
use crate::spaces::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// `Σ_{p>=0} t^p/p! ⊙ A^p`
    Exp,
    /// `Σ_{p>=0} t^{2p}/(2p)! ⊙ A^p`
    Cosh,
    /// `Σ_{p>=1} t^{2p-1}/(2p-1)! ⊙ A^p`
    Sinh,
}

/// Hard cap on majorant terms; reached only for `|t| M` in the hundreds.
const MAX_TERMS: usize = 100_000;

/// Majorant term sequence `a_k` (with `a_k >= ||k-th series term||` for
/// `||x|| <= 1`) and the ratio `a_{k+1} / a_k`.
fn majorant(kind: SeriesKind, t: f64, bound: f64) -> (f64, impl Fn(usize) -> f64) {
    let t = t.abs();
    let w = t * bound.sqrt();
    match kind {
        SeriesKind::Exp => {
            let z = t * bound;
            (1.0, Box::new(move |k: usize| z / (k + 1) as f64) as Box<dyn Fn(usize) -> f64>)
        }
        // ||A^p x|| <= M^p, so t^{2p} M^p / (2p)! = (t √M)^{2p} / (2p)!
        SeriesKind::Cosh => (1.0, Box::new(move |k: usize| w * w / ((2 * k + 1) * (2 * k + 2)) as f64)),
        // a_0 = 0 (no p = 0 term), a_1 = √M w
        SeriesKind::Sinh => {
            (0.0, Box::new(move |k: usize| if k == 0 { f64::NAN } else { w * w / ((2 * k) * (2 * k + 1)) as f64 }))
        }
    }
}

/// Smallest `m` such that the majorant tail `Σ_{k>m} a_k <= tol`.
///
/// Terms are summed directly until they drop below `tol * 1e-3` with a
/// ratio of at most 1/2; the remainder past that point is bounded by the
/// last term.
pub fn required_order(t: f64, bound: f64, tol: f64, kind: SeriesKind) -> Result<usize> {
    if !(t.is_finite() && bound.is_finite() && bound >= 0.0 && tol > 0.0) {
        return Err(Error::InvalidParameter(format!("required_order(t={t}, M={bound}, tol={tol})")));
    }
    if t == 0.0 || bound == 0.0 {
        return Ok(0);
    }
    let (a0, ratio) = majorant(kind, t, bound);
    let mut terms = vec![a0];
    let mut a = if kind == SeriesKind::Sinh { bound.sqrt() * t.abs() * bound.sqrt() } else { a0 };
    if kind == SeriesKind::Sinh {
        terms.push(a);
    }
    loop {
        let k = terms.len() - 1;
        let r = ratio(k);
        if a < tol * 1e-3 && r <= 0.5 {
            break;
        }
        if terms.len() > MAX_TERMS || !a.is_finite() {
            return Err(Error::InvalidParameter(format!("series for |t|M = {} is out of range", t.abs() * bound)));
        }
        a *= r;
        terms.push(a);
    }
    // terms[K] doubles as the bound on everything past K
    let mut tail = *terms.last().unwrap();
    let mut m = terms.len() - 1;
    while m > 0 {
        let next = tail + terms[m];
        if next > tol {
            break;
        }
        tail = next;
        m -= 1;
    }
    Ok(m)
}

/// `Σ_{k >= 2} z^k / k!`, accurate for small `z`.
pub fn exp_remainder2(z: f64) -> f64 {
    if z.abs() > 0.5 {
        return z.exp_m1() - z;
    }
    let mut term = 0.5 * z * z;
    let mut sum = 0.0f64;
    let mut k = 2.0;
    while term.abs() > 1e-18 * sum.abs() && term != 0.0 {
        sum += term;
        k += 1.0;
        term *= z / k;
    }
    sum
}

/// `||x|| (e^{hM} - 1 - hM) / h`: how far the generator difference
/// quotient may be from `A(x)`.
pub fn generator_bound(h: f64, bound: f64, norm_x: f64) -> f64 {
    norm_x * exp_remainder2(h * bound) / h
}

/// Truncated series evaluator for one operator.
#[derive(Clone, Debug)]
pub struct SemigroupEvaluator {
    op: Operator,
    kind: SeriesKind,
    tol: f64,
}

impl SemigroupEvaluator {
    pub fn new(op: Operator, kind: SeriesKind, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        if !op.norm_bound().is_finite() {
            return Err(Error::InvalidParameter(format!("operator {} has no finite norm bound", op.name())));
        }
        Ok(Self { op, kind, tol })
    }

    pub fn exp(op: Operator, tol: f64) -> Result<Self> {
        Self::new(op, SeriesKind::Exp, tol)
    }

    pub fn cosh(op: Operator, tol: f64) -> Result<Self> {
        Self::new(op, SeriesKind::Cosh, tol)
    }

    pub fn sinh(op: Operator, tol: f64) -> Result<Self> {
        Self::new(op, SeriesKind::Sinh, tol)
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_kind(&self, kind: SeriesKind) -> Self {
        Self { op: self.op.clone(), kind, tol: self.tol }
    }

    /// Truncation order used for `(t, x)`.
    pub fn order_for(&self, t: f64, x: &Element) -> Result<usize> {
        let scale = x.norm().max(1.0);
        required_order(t, self.op.norm_bound(), self.tol / scale, self.kind)
    }

    /// The series for `self.kind` truncated after `m` terms (`p <= m`).
    pub fn partial_sum(&self, t: f64, x: &Element, m: usize) -> Result<Element> {
        let mut acc = match self.kind {
            SeriesKind::Exp | SeriesKind::Cosh => x.clone(),
            SeriesKind::Sinh => x.zero_like(),
        };
        let mut y = x.clone();
        let mut coef = 1.0;
        for p in 1..=m {
            y = self.op.apply(&y)?;
            coef = match self.kind {
                SeriesKind::Exp => coef * t / p as f64,
                SeriesKind::Cosh => coef * t * t / ((2 * p - 1) * (2 * p)) as f64,
                SeriesKind::Sinh if p == 1 => t,
                SeriesKind::Sinh => coef * t * t / ((2 * p - 2) * (2 * p - 1)) as f64,
            };
            if y.is_zero() {
                break;
            }
            acc = acc.plus(&y.scale(coef))?;
        }
        Ok(acc)
    }

    /// The series for `self.kind` at `(t, x)` within `tol`.
    pub fn evaluate(&self, t: f64, x: &Element) -> Result<Element> {
        let m = self.order_for(t, x)?;
        log::trace!("{:?} series for {} at t={t}: order {m}", self.kind, self.op.name());
        self.partial_sum(t, x, m)
    }

    /// `e^{t⊙A}(x)`; `T(0)(x) = x` exactly.
    pub fn exp_apply(&self, t: f64, x: &Element) -> Result<Element> {
        self.with_kind(SeriesKind::Exp).evaluate(t, x)
    }

    /// `cosh(t⊙A)(x)`.
    pub fn cosh_apply(&self, t: f64, x: &Element) -> Result<Element> {
        self.with_kind(SeriesKind::Cosh).evaluate(t, x)
    }

    /// `sinh(t⊙A)(x)`, the time derivative of `cosh(t⊙A)(x)`.
    pub fn sinh_apply(&self, t: f64, x: &Element) -> Result<Element> {
        self.with_kind(SeriesKind::Sinh).evaluate(t, x)
    }

    /// `d(T(t+s)x, T(t)(T(s)x))` for same-sign `t`, `s`. Each side carries
    /// truncation error `tol`, and the inner error is amplified by at most
    /// `e^{|t| M}`, so the residual is at most `tol (2 + e^{|t| M})` plus
    /// rounding.
    pub fn check_semigroup_law(&self, t: f64, s: f64, x: &Element) -> Result<f64> {
        if t * s < 0.0 {
            return Err(Error::MixedSigns { t, s });
        }
        let lhs = self.exp_apply(t + s, x)?;
        let rhs = self.exp_apply(t, &self.exp_apply(s, x)?)?;
        lhs.distance(&rhs)
    }

    /// Documented bound for [`Self::check_semigroup_law`].
    pub fn semigroup_law_bound(&self, t: f64) -> f64 {
        self.tol * (2.0 + (t.abs() * self.op.norm_bound()).exp())
    }

    /// `d((1/h) ⊙ [T(h)x ⊖ x], A(x))`.
    pub fn generator_residual(&self, h: f64, x: &Element) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter(format!("generator step must be positive, got {h}")));
        }
        let th = self.exp_apply(h, x)?;
        let diff = th.hukuhara_diff(x).map_err(|e| Error::HDiffFailed { h, reason: e.to_string() })?;
        diff.scale(1.0 / h).distance(&self.op.apply(x)?)
    }

    /// `||x|| (e^{hM} - 1 - hM)/h + tol/h`.
    pub fn generator_residual_bound(&self, h: f64, x: &Element) -> f64 {
        generator_bound(h, self.op.norm_bound(), x.norm()) + self.tol / h
    }

    /// Bound for [`Self::second_derivative_residual`]: the Taylor remainder
    /// of each coefficient `t^{2p-1}/(2p-1)!` summed against `M^p`, which
    /// totals `(h/2) M^{3/2} sinh((t+h)√M) ||x||`, plus truncation slack.
    pub fn second_derivative_bound(&self, t: f64, h: f64, x: &Element) -> f64 {
        let m = self.op.norm_bound();
        let scale = x.norm().max(1.0);
        0.5 * h * m.powf(1.5) * ((t + h) * m.sqrt()).sinh() * x.norm() + scale * self.tol * (2.0 / h + m)
    }

    /// `d((1/h) ⊙ [sinh(t+h)x ⊖ sinh(t)x], A[cosh(t)x])` for `t >= 0`:
    /// the forward difference of `T'` against `A[T(t)]` with
    /// `T = cosh(t⊙A)`.
    pub fn second_derivative_residual(&self, t: f64, h: f64, x: &Element) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter(format!("difference step must be positive, got {h}")));
        }
        let forward = self.sinh_apply(t + h, x)?;
        let here = self.sinh_apply(t, x)?;
        let diff = forward.hukuhara_diff(&here).map_err(|e| Error::HDiffFailed { h, reason: e.to_string() })?;
        let target = self.op.apply(&self.cosh_apply(t, x)?)?;
        diff.scale(1.0 / h).distance(&target)
    }
}
