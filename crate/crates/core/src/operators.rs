//! Additive, (positively) homogeneous operators on fuzzy spaces.
//!
//! Operator norms are never computed. Every operator carries a certified
//! upper bound `M` with `||A(x)|| <= M ||x||`; that is all the series
//! engine needs. [`phi_distance`] gives a probe-set lower bound on the
//! operator metric `Φ(A, B) = sup_{||x|| <= 1} d(A(x), B(x))`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{trapezoid, FuzzyNumber, DEFAULT_LEVEL_COUNT};
use crate::spaces::Element;

/// Homogeneity class of an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Homogeneity {
    /// `A(λ ⊙ x) = λ ⊙ A(x)` for all real `λ`.
    Linear,
    /// Only for `λ >= 0`.
    PositiveHomogeneous,
}

/// An additive, homogeneous map with a certified norm bound.
pub trait LinearOperator: Send + Sync + fmt::Debug {
    fn apply(&self, x: &Element) -> Result<Element>;

    /// `M` with `||A(x)|| <= M ||x||` for every `x`.
    fn norm_bound(&self) -> f64;

    fn homogeneity(&self) -> Homogeneity {
        Homogeneity::Linear
    }

    fn name(&self) -> String;
}

pub type Operator = Arc<dyn LinearOperator>;

#[derive(Debug, Clone, Copy)]
pub struct Identity;

impl LinearOperator for Identity {
    fn apply(&self, x: &Element) -> Result<Element> {
        Ok(x.clone())
    }

    fn norm_bound(&self) -> f64 {
        1.0
    }

    fn name(&self) -> String {
        "I".into()
    }
}

/// `Õ(x) = 0̃`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroOperator;

impl LinearOperator for ZeroOperator {
    fn apply(&self, x: &Element) -> Result<Element> {
        Ok(x.zero_like())
    }

    fn norm_bound(&self) -> f64 {
        0.0
    }

    fn name(&self) -> String {
        "O".into()
    }
}

/// `(λ ⊙ A)(x) = λ ⊙ A(x)`.
#[derive(Debug, Clone)]
pub struct Scaled {
    pub factor: f64,
    pub inner: Operator,
}

impl LinearOperator for Scaled {
    fn apply(&self, x: &Element) -> Result<Element> {
        Ok(self.inner.apply(x)?.scale(self.factor))
    }

    fn norm_bound(&self) -> f64 {
        self.factor.abs() * self.inner.norm_bound()
    }

    fn homogeneity(&self) -> Homogeneity {
        self.inner.homogeneity()
    }

    fn name(&self) -> String {
        format!("{}*{}", self.factor, self.inner.name())
    }
}

/// `(A ∘ B)(x) = A(B(x))`.
#[derive(Debug, Clone)]
pub struct Composed {
    pub outer: Operator,
    pub inner: Operator,
}

impl LinearOperator for Composed {
    fn apply(&self, x: &Element) -> Result<Element> {
        self.outer.apply(&self.inner.apply(x)?)
    }

    fn norm_bound(&self) -> f64 {
        self.outer.norm_bound() * self.inner.norm_bound()
    }

    fn homogeneity(&self) -> Homogeneity {
        combine(self.outer.homogeneity(), self.inner.homogeneity())
    }

    fn name(&self) -> String {
        format!("{}∘{}", self.outer.name(), self.inner.name())
    }
}

/// `A^k`, with `A^0 = I`.
#[derive(Debug, Clone)]
pub struct Power {
    pub base: Operator,
    pub exponent: u32,
}

impl LinearOperator for Power {
    fn apply(&self, x: &Element) -> Result<Element> {
        let mut y = x.clone();
        for _ in 0..self.exponent {
            y = self.base.apply(&y)?;
        }
        Ok(y)
    }

    fn norm_bound(&self) -> f64 {
        self.base.norm_bound().powi(self.exponent as i32)
    }

    fn homogeneity(&self) -> Homogeneity {
        if self.exponent == 0 {
            Homogeneity::Linear
        } else {
            self.base.homogeneity()
        }
    }

    fn name(&self) -> String {
        format!("{}^{}", self.base.name(), self.exponent)
    }
}

fn combine(a: Homogeneity, b: Homogeneity) -> Homogeneity {
    if a == Homogeneity::Linear && b == Homogeneity::Linear {
        Homogeneity::Linear
    } else {
        Homogeneity::PositiveHomogeneous
    }
}

pub fn identity() -> Operator {
    Arc::new(Identity)
}

pub fn zero_operator() -> Operator {
    Arc::new(ZeroOperator)
}

pub fn scaled(factor: f64, inner: Operator) -> Operator {
    Arc::new(Scaled { factor, inner })
}

pub fn compose(outer: Operator, inner: Operator) -> Operator {
    Arc::new(Composed { outer, inner })
}

pub fn power(base: Operator, exponent: u32) -> Operator {
    Arc::new(Power { base, exponent })
}

/// The example operators on `R_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuiltinKind {
    /// `∫_0^1 [x_-(r) + x_+(r)] dr` (crisp valued).
    A1,
    /// `(∫_0^1 [x_+(0) - x_+(r)] dr) ⊙ c`.
    A2,
    /// `(∫_0^1 [x_-(1) - x_-(r)] dr) ⊙ c`.
    A3,
    /// `∫_0^1 x_-(r) dr` (crisp valued).
    A4,
    /// `∫_0^1 x_+(r) dr` (crisp valued).
    A5,
    /// `[x_-(1) - ∫ x_-] ⊙ c`, requires `μ = c_-(1) - ∫ c_- > 0`.
    RemarkA,
    /// `[x_+(0) - ∫ x_+] ⊙ c`, the form under which its semigroup closed
    /// form holds.
    RemarkB,
}

impl BuiltinKind {
    pub const ALL: [BuiltinKind; 7] = [
        BuiltinKind::A1,
        BuiltinKind::A2,
        BuiltinKind::A3,
        BuiltinKind::A4,
        BuiltinKind::A5,
        BuiltinKind::RemarkA,
        BuiltinKind::RemarkB,
    ];

    pub fn needs_constant(self) -> bool {
        !matches!(self, BuiltinKind::A1 | BuiltinKind::A4 | BuiltinKind::A5)
    }

    fn label(self) -> &'static str {
        match self {
            BuiltinKind::A1 => "A1",
            BuiltinKind::A2 => "A2",
            BuiltinKind::A3 => "A3",
            BuiltinKind::A4 => "A4",
            BuiltinKind::A5 => "A5",
            BuiltinKind::RemarkA => "RemarkA",
            BuiltinKind::RemarkB => "RemarkB",
        }
    }
}

/// `x_-(1) - ∫_0^1 x_-(r) dr`, computed as `∫ [x_-(1) - x_-(r)] dr` so the
/// result is nonnegative by construction.
pub fn lower_defect(x: &FuzzyNumber) -> f64 {
    let top = x.lower()[x.level_count()];
    let v: Vec<f64> = x.lower().iter().map(|l| top - l).collect();
    trapezoid(x.levels(), &v)
}

/// `x_+(0) - ∫_0^1 x_+(r) dr`, nonnegative by construction.
pub fn upper_defect(x: &FuzzyNumber) -> f64 {
    let bottom = x.upper()[0];
    let v: Vec<f64> = x.upper().iter().map(|u| bottom - u).collect();
    trapezoid(x.levels(), &v)
}

/// One of the example operators, lifted pointwise to function and
/// sequence spaces.
#[derive(Debug, Clone)]
pub struct Builtin {
    kind: BuiltinKind,
    c: Option<FuzzyNumber>,
}

impl Builtin {
    pub fn new(kind: BuiltinKind, c: Option<FuzzyNumber>) -> Result<Self> {
        if kind.needs_constant() {
            let Some(cv) = &c else {
                return Err(Error::MissingConstant(kind.label()));
            };
            if matches!(kind, BuiltinKind::RemarkA | BuiltinKind::RemarkB) {
                let mu = lower_defect(cv);
                if !(mu > 0.0) {
                    return Err(Error::MuNotPositive { name: kind.label(), mu });
                }
            }
        }
        let c = if kind.needs_constant() { c } else { None };
        Ok(Self { kind, c })
    }

    pub fn kind(&self) -> BuiltinKind {
        self.kind
    }

    pub fn constant(&self) -> Option<&FuzzyNumber> {
        self.c.as_ref()
    }

    /// `μ = c_-(1) - ∫ c_-`.
    pub fn mu_coeff(&self) -> Option<f64> {
        self.c.as_ref().map(lower_defect)
    }

    /// Rate `ρ` with `A(k ⊙ c) = ρ k ⊙ c` for `k >= 0`: `μ` for
    /// `RemarkA`/`A3`, `c_+(0) - ∫ c_+` for `RemarkB`/`A2`.
    pub fn growth_rate(&self) -> Option<f64> {
        let c = self.c.as_ref()?;
        match self.kind {
            BuiltinKind::A3 | BuiltinKind::RemarkA => Some(lower_defect(c)),
            BuiltinKind::A2 | BuiltinKind::RemarkB => Some(upper_defect(c)),
            _ => None,
        }
    }

    fn apply_number(&self, x: &FuzzyNumber) -> FuzzyNumber {
        let crisp = |v: f64| FuzzyNumber::crisp_on(v, x.levels().to_vec());
        let c = || self.c.as_ref().expect("validated at construction");
        match self.kind {
            BuiltinKind::A1 => {
                let s: Vec<f64> = x.lower().iter().zip(x.upper()).map(|(a, b)| a + b).collect();
                crisp(trapezoid(x.levels(), &s))
            }
            BuiltinKind::A4 => crisp(x.lower_integral()),
            BuiltinKind::A5 => crisp(x.upper_integral()),
            BuiltinKind::A2 | BuiltinKind::RemarkB => c().scale(upper_defect(x)),
            BuiltinKind::A3 | BuiltinKind::RemarkA => c().scale(lower_defect(x)),
        }
    }
}

impl LinearOperator for Builtin {
    fn apply(&self, x: &Element) -> Result<Element> {
        x.try_map_pointwise(|u| Ok(self.apply_number(u)))
    }

    /// `A1`: 2. `A4`, `A5`: 1. The coefficient-times-`c` operators: the
    /// coefficient is at most `x_+(0) - x_+(1)` (resp. `x_-(1) - x_-(0)`),
    /// which is at most `2 ||x||`, so `2 ||c||`.
    fn norm_bound(&self) -> f64 {
        match self.kind {
            BuiltinKind::A1 => 2.0,
            BuiltinKind::A4 | BuiltinKind::A5 => 1.0,
            _ => 2.0 * self.c.as_ref().map_or(0.0, FuzzyNumber::norm),
        }
    }

    /// Only `A1` is homogeneous for negative factors: for the others a
    /// negative factor swaps which endpoint feeds the integral.
    fn homogeneity(&self) -> Homogeneity {
        match self.kind {
            BuiltinKind::A1 => Homogeneity::Linear,
            _ => Homogeneity::PositiveHomogeneous,
        }
    }

    fn name(&self) -> String {
        self.kind.label().into()
    }
}

pub fn builtin(kind: BuiltinKind, c: Option<FuzzyNumber>) -> Result<Operator> {
    Ok(Arc::new(Builtin::new(kind, c)?))
}

/// `Ã(w)_i = ⊕_j a_ij ⊙ w_j` on products of arity `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    entries: Vec<Vec<f64>>,
}

impl MatrixOperator {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        let k = entries.len();
        if k == 0 || entries.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidParameter("matrix operator needs a non-empty square matrix".into()));
        }
        if entries.iter().flatten().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("matrix entries must be finite".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }
}

impl LinearOperator for MatrixOperator {
    fn apply(&self, x: &Element) -> Result<Element> {
        let w =
            x.components().ok_or_else(|| Error::SpaceMismatch(format!("matrix operator applied to {}", x.kind())))?;
        if w.len() != self.arity() {
            return Err(Error::ArityMismatch(self.arity(), w.len()));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                let mut acc = w[0].scale(row[0]);
                for (a, wj) in row.iter().zip(w).skip(1) {
                    acc = acc.plus(&wj.scale(*a))?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::Product(rows))
    }

    /// Max absolute row sum.
    fn norm_bound(&self) -> f64 {
        self.entries.iter().map(|row| row.iter().map(|a| a.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    fn name(&self) -> String {
        format!("{:?}", self.entries)
    }
}

pub fn lift_matrix(entries: Vec<Vec<f64>>) -> Result<Operator> {
    Ok(Arc::new(MatrixOperator::new(entries)?))
}

/// Slack allowed on probe norms (normalised probes may land an ulp above 1).
const PROBE_NORM_SLACK: f64 = 1e-12;

/// Probe-set lower bound on `Φ(A, B)`: `max_i d(A(x_i), B(x_i))`.
pub fn phi_distance(a: &dyn LinearOperator, b: &dyn LinearOperator, probes: &[Element]) -> Result<f64> {
    for (index, p) in probes.iter().enumerate() {
        let norm = p.norm();
        if norm > 1.0 + PROBE_NORM_SLACK {
            return Err(Error::ProbeNormViolation { index, norm });
        }
    }
    probes.iter().try_fold(0.0, |acc, x| Ok(f64::max(acc, a.apply(x)?.distance(&b.apply(x)?)?)))
}

/// Seed of the random part of the canonical probe set.
pub const PROBE_SEED: u64 = 0x5eed_f022;
pub const RANDOM_PROBE_COUNT: usize = 32;

/// Random valid fuzzy number with endpoints roughly in `[-scale, scale]`.
/// Endpoints are random monotone sequences, so the result is generally not
/// triangular.
pub fn random_fuzzy(rng: &mut impl Rng, m: usize, scale: f64) -> FuzzyNumber {
    let a = rng.gen_range(-scale..scale);
    let b = a + rng.gen_range(0.0..scale) * if rng.gen_bool(0.2) { 0.0 } else { 1.0 };
    let mut lower = vec![0.0; m + 1];
    let mut upper = vec![0.0; m + 1];
    lower[m] = a;
    upper[m] = b;
    let (sl, su) = (rng.gen_range(0.0..scale), rng.gen_range(0.0..scale));
    for i in (0..m).rev() {
        lower[i] = lower[i + 1] - sl * rng.gen_range(0.0..2.0) / m as f64;
        upper[i] = upper[i + 1] + su * rng.gen_range(0.0..2.0) / m as f64;
    }
    FuzzyNumber::new(crate::fuzzy::uniform_levels(m), lower, upper).expect("monotone by construction")
}

/// Crisp ±1, `(-1, 0, 1)`, `(0, 0.5, 1)`, `(-1, -0.5, 0)` and 32 seeded
/// random numbers normalised to unit norm.
pub fn canonical_probes() -> Vec<FuzzyNumber> {
    let m = DEFAULT_LEVEL_COUNT;
    let tri = |l, c, r| FuzzyNumber::triangular(l, c, r, m).expect("ordered");
    let mut out = vec![
        FuzzyNumber::crisp(1.0),
        FuzzyNumber::crisp(-1.0),
        tri(-1.0, 0.0, 1.0),
        tri(0.0, 0.5, 1.0),
        tri(-1.0, -0.5, 0.0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    while out.len() < 5 + RANDOM_PROBE_COUNT {
        let x = random_fuzzy(&mut rng, m, 1.0);
        let n = x.norm();
        if n > 0.0 {
            out.push(x.scale(1.0 / n));
        }
    }
    out
}

/// Canonical probes as elements of a product of `arity` copies of `R_F`.
/// Component `j` of probe `i` is number probe `(i + 7j) mod n`.
pub fn canonical_probe_elements(arity: usize) -> Vec<Element> {
    let base = canonical_probes();
    let n = base.len();
    if arity <= 1 {
        return base.into_iter().map(Element::Number).collect();
    }
    (0..n)
        .map(|i| Element::Product((0..arity).map(|j| Element::Number(base[(i + 7 * j) % n].clone())).collect()))
        .collect()
}

/// Canonical probes shaped like `sample` (number or product of numbers).
pub fn probes_like(sample: &Element) -> Vec<Element> {
    match sample {
        Element::Product(c) => canonical_probe_elements(c.len()),
        _ => canonical_probe_elements(1),
    }
}

/// JSON description of an operator:
/// `{"kind":"builtin","name":"RemarkA","c":{"tri":[0,1,2]}}` or
/// `{"kind":"matrix","entries":[[0,1],[1,0]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    Builtin {
        name: BuiltinKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<FuzzyNumber>,
    },
    Matrix {
        entries: Vec<Vec<f64>>,
    },
    Identity,
    Zero,
    Scaled {
        factor: f64,
        inner: Box<OperatorSpec>,
    },
}

impl OperatorSpec {
    pub fn build(&self) -> Result<Operator> {
        match self {
            OperatorSpec::Builtin { name, c } => builtin(*name, c.clone()),
            OperatorSpec::Matrix { entries } => lift_matrix(entries.clone()),
            OperatorSpec::Identity => Ok(identity()),
            OperatorSpec::Zero => Ok(zero_operator()),
            OperatorSpec::Scaled { factor, inner } => Ok(scaled(*factor, inner.build()?)),
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

    fn num(e: Element) -> FuzzyNumber {
        e.as_number().unwrap().clone()
    }

    fn c012() -> Option<FuzzyNumber> {
        Some(tri(0.0, 1.0, 2.0))
    }

    #[test]
    fn builtins_on_reference_number() {
        // exact integrals of affine endpoints r and 2 - r
        let x: Element = tri(0.0, 1.0, 2.0).into();
        let a1 = builtin(BuiltinKind::A1, None).unwrap();
        assert_abs_diff_eq!(num(a1.apply(&x).unwrap()).lower()[0], 2.0, epsilon = 1e-15);
        let a4 = builtin(BuiltinKind::A4, None).unwrap();
        assert_eq!(num(a4.apply(&x).unwrap()), FuzzyNumber::crisp(0.5));
        let a5 = builtin(BuiltinKind::A5, None).unwrap();
        assert_eq!(num(a5.apply(&x).unwrap()), FuzzyNumber::crisp(1.5));
        let a2 = builtin(BuiltinKind::A2, Some(FuzzyNumber::crisp(1.0))).unwrap();
        assert_eq!(num(a2.apply(&x).unwrap()), FuzzyNumber::crisp(0.5));
        let ra = builtin(BuiltinKind::RemarkA, c012()).unwrap();
        assert!(num(ra.apply(&x).unwrap()).distance(&tri(0.0, 0.5, 1.0)) < 1e-15);
        assert!(ra.apply(&x.zero_like()).unwrap().is_zero());
    }

    #[test]
    fn remark_a_power_formula() {
        // A^n(x) = μ^{n-1} (x_-(1) - ∫ x_-) ⊙ c
        let c = tri(0.0, 0.7, 1.0);
        let a = builtin(BuiltinKind::RemarkA, Some(c.clone())).unwrap();
        let x = tri(-1.0, 0.2, 3.0);
        let mu = lower_defect(&c);
        let coeff = lower_defect(&x);
        assert_abs_diff_eq!(mu, 0.35, epsilon = 1e-15);
        for n in 1..5u32 {
            let got = num(power(a.clone(), n).apply(&x.clone().into()).unwrap());
            let want = c.scale(mu.powi(n as i32 - 1) * coeff);
            assert!(got.distance(&want) < 1e-15, "n={n}");
        }
        let p0 = power(a.clone(), 0);
        assert_eq!(num(p0.apply(&x.clone().into()).unwrap()), x);
        assert_abs_diff_eq!(power(a.clone(), 3).norm_bound(), a.norm_bound().powi(3), epsilon = 1e-12);
    }

    #[test]
    fn mu_must_be_positive() {
        assert!(matches!(
            builtin(BuiltinKind::RemarkA, Some(FuzzyNumber::crisp(1.0))),
            Err(Error::MuNotPositive { .. })
        ));
        assert!(matches!(builtin(BuiltinKind::RemarkB, Some(tri(1.0, 1.0, 2.0))), Err(Error::MuNotPositive { .. })));
        assert!(matches!(builtin(BuiltinKind::A2, None), Err(Error::MissingConstant("A2"))));
    }

    #[test]
    fn negative_factor_breaks_coefficient_operators() {
        // A3(-x) = (0, .5, 1) while -A3(x) = (-1, -.5, 0)
        let x: Element = tri(0.0, 1.0, 2.0).into();
        let a3 = builtin(BuiltinKind::A3, c012()).unwrap();
        let lhs = a3.apply(&x.scale(-1.0)).unwrap();
        let rhs = a3.apply(&x).unwrap().scale(-1.0);
        assert_abs_diff_eq!(lhs.distance(&rhs).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(a3.homogeneity(), Homogeneity::PositiveHomogeneous);
        let a1 = builtin(BuiltinKind::A1, None).unwrap();
        let lhs = a1.apply(&x.scale(-1.0)).unwrap();
        let rhs = a1.apply(&x).unwrap().scale(-1.0);
        assert_eq!(lhs.distance(&rhs).unwrap(), 0.0);
    }

    #[test]
    fn lifted_matrices() {
        let (u, v) = (tri(0.0, 1.0, 2.0), tri(1.0, 2.0, 3.0));
        let w = Element::pair(u.clone(), v.clone());
        let swap = lift_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(swap.apply(&w).unwrap(), Element::pair(v.clone(), u.clone()));
        let p5 = lift_matrix(vec![vec![1.0, 1.0], vec![-1.0, -1.0]]).unwrap();
        let s = &u + &v;
        assert_eq!(p5.apply(&w).unwrap(), Element::pair(s.clone(), s.scale(-1.0)));
        assert_eq!(p5.norm_bound(), 2.0);
        let id = lift_matrix(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(id.apply(&w).unwrap(), w);
        assert!(matches!(p5.apply(&u.clone().into()), Err(Error::SpaceMismatch(_))));
        let w3 = Element::Product(vec![u.clone().into(), u.clone().into(), u.into()]);
        assert!(matches!(p5.apply(&w3), Err(Error::ArityMismatch(2, 3))));
    }

    #[test]
    fn problem5_square_and_symmetry_of_fuzziness_residual() {
        let (u, v) = (tri(0.0, 1.0, 2.0), tri(1.0, 2.0, 3.0));
        let p5 = lift_matrix(vec![vec![1.0, 1.0], vec![-1.0, -1.0]]).unwrap();
        let sq = power(p5, 2).apply(&Element::pair(u.clone(), v.clone())).unwrap();
        let s = &u + &v;
        let e = &s + &s.scale(-1.0);
        assert_eq!(sq, Element::pair(e.clone(), e.clone()));
        assert_eq!(e.scale(-1.0), e);
        assert!(e.distance(&tri(-4.0, 0.0, 4.0)) < 1e-15);
    }

    #[test]
    fn phi_examples() {
        let probes = canonical_probe_elements(1);
        assert_eq!(probes.len(), 37);
        let a = builtin(BuiltinKind::RemarkA, c012()).unwrap();
        assert_eq!(phi_distance(a.as_ref(), a.as_ref(), &probes).unwrap(), 0.0);
        let z = zero_operator();
        let phi = phi_distance(a.as_ref(), z.as_ref(), &probes).unwrap();
        assert!(phi > 0.0 && phi <= a.norm_bound());
        let a2 = scaled(2.0, a.clone());
        assert_abs_diff_eq!(phi_distance(a2.as_ref(), z.as_ref(), &probes).unwrap(), 2.0 * phi, epsilon = 1e-15);
        let big = vec![Element::Number(tri(0.0, 1.0, 2.0))];
        assert!(matches!(phi_distance(a.as_ref(), z.as_ref(), &big), Err(Error::ProbeNormViolation { .. })));
    }

    #[test]
    fn canonical_probes_are_deterministic_and_in_unit_ball() {
        let p = canonical_probes();
        assert_eq!(p, canonical_probes());
        assert!(p.iter().all(|x| x.norm() <= 1.0 + 1e-12 && x.invariant_violation() == 0.0));
    }

    #[test]
    fn operator_spec_json() {
        let s: OperatorSpec =
            serde_json::from_str(r#"{"kind":"builtin","name":"RemarkA","c":{"tri":[0,1,2]}}"#).unwrap();
        assert_eq!(s.build().unwrap().name(), "RemarkA");
        let m: OperatorSpec = serde_json::from_str(r#"{"kind":"matrix","entries":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(m.build().unwrap().norm_bound(), 1.0);
        assert!(serde_json::from_str::<OperatorSpec>(r#"{"kind":"builtin","name":"A9"}"#).is_err());
        let bad: OperatorSpec = serde_json::from_str(r#"{"kind":"matrix","entries":[[0,1]]}"#).unwrap();
        assert!(bad.build().is_err());
    }
}
