//! Spaces built on fuzzy numbers: sampled fuzzy-valued functions on
//! `[a, b]`, finite fuzzy sequences, and box-metric products of those.
//!
//! [`Element`] is the common currency of the operator and semigroup
//! modules; it carries the algebra (`⊕`, `⊙`, `⊖`) and the metric of the
//! space it belongs to.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{union_grid, FuzzyNumber};

/// Default number of space-grid intervals for sampled functions.
pub const DEFAULT_NODE_COUNT: usize = 128;

/// A fuzzy-number-valued function on `[a, b]`, stored as samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzyFunction {
    a: f64,
    b: f64,
    nodes: Vec<f64>,
    values: Vec<FuzzyNumber>,
}

impl FuzzyFunction {
    pub fn new(a: f64, b: f64, nodes: Vec<f64>, values: Vec<FuzzyNumber>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidFunction(format!("bad domain [{a}, {b}]")));
        }
        if nodes.len() < 2 || nodes.len() != values.len() {
            return Err(Error::InvalidFunction(format!(
                "need >= 2 nodes with one value each, got {} nodes and {} values",
                nodes.len(),
                values.len()
            )));
        }
        if nodes[0] != a || nodes[nodes.len() - 1] != b || nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidFunction("nodes must increase strictly from a to b".into()));
        }
        let values = unify_levels(values);
        Ok(Self { a, b, nodes, values })
    }

    /// Samples `f` at `n + 1` uniform nodes.
    pub fn sample(a: f64, b: f64, n: usize, f: impl Fn(f64) -> FuzzyNumber) -> Result<Self> {
        let nodes = uniform_nodes(a, b, n)?;
        let values = nodes.iter().map(|&x| f(x)).collect();
        Self::new(a, b, nodes, values)
    }

    pub fn constant(a: f64, b: f64, n: usize, u: &FuzzyNumber) -> Result<Self> {
        Self::sample(a, b, n, |_| u.clone())
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[FuzzyNumber] {
        &self.values
    }

    /// Value at `x`: `(1 - θ) ⊙ f(x_i) ⊕ θ ⊙ f(x_{i+1})` between nodes.
    pub fn value_at(&self, x: f64) -> FuzzyNumber {
        let n = self.nodes.len();
        if x <= self.a {
            return self.values[0].clone();
        }
        if x >= self.b {
            return self.values[n - 1].clone();
        }
        let j = self.nodes.partition_point(|&g| g <= x);
        let (x0, x1) = (self.nodes[j - 1], self.nodes[j]);
        if x == x0 {
            return self.values[j - 1].clone();
        }
        let th = (x - x0) / (x1 - x0);
        self.values[j - 1].scale(1.0 - th).plus(&self.values[j].scale(th))
    }

    pub fn resample(&self, nodes: &[f64]) -> Self {
        if nodes == self.nodes.as_slice() {
            return self.clone();
        }
        let values = nodes.iter().map(|&x| self.value_at(x)).collect();
        Self { a: self.a, b: self.b, nodes: nodes.to_vec(), values }
    }

    fn check_domain(&self, other: &Self) -> Result<()> {
        if self.a != other.a || self.b != other.b {
            return Err(Error::DomainMismatch { a1: self.a, b1: self.b, a2: other.a, b2: other.b });
        }
        Ok(())
    }

    /// Both operands on the union node grid.
    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        self.check_domain(other)?;
        if self.nodes == other.nodes {
            return Ok((self.clone(), other.clone()));
        }
        let grid = union_grid(&self.nodes, &other.nodes);
        Ok((self.resample(&grid), other.resample(&grid)))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&FuzzyNumber, &FuzzyNumber) -> Result<FuzzyNumber>) -> Result<Self> {
        let (u, v) = self.align(other)?;
        let values = u.values.iter().zip(&v.values).map(|(x, y)| f(x, y)).collect::<Result<Vec<_>>>()?;
        Ok(Self { values, ..u })
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| Ok(x.plus(y)))
    }

    pub fn scale(&self, lambda: f64) -> Self {
        self.map(|u| u.scale(lambda))
    }

    pub fn hukuhara_diff(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x.hukuhara_diff(y))
    }

    pub fn map(&self, f: impl Fn(&FuzzyNumber) -> FuzzyNumber) -> Self {
        Self { a: self.a, b: self.b, nodes: self.nodes.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&FuzzyNumber) -> Result<FuzzyNumber>) -> Result<Self> {
        let values = self.values.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Self { a: self.a, b: self.b, nodes: self.nodes.clone(), values })
    }

    pub fn zero_like(&self) -> Self {
        self.map(FuzzyNumber::zero_like)
    }

    /// Pointwise distances `D(f(x_i), g(x_i))` on the union node grid.
    fn pointwise_distances(&self, other: &Self) -> Result<(Vec<f64>, Vec<f64>)> {
        let (u, v) = self.align(other)?;
        let d = u.values.iter().zip(&v.values).map(|(x, y)| x.distance(y)).collect();
        Ok((u.nodes, d))
    }
}

impl<'de> Deserialize<'de> for FuzzyFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            a: f64,
            b: f64,
            nodes: Vec<f64>,
            values: Vec<FuzzyNumber>,
        }
        let r = Repr::deserialize(d)?;
        FuzzyFunction::new(r.a, r.b, r.nodes, r.values).map_err(serde::de::Error::custom)
    }
}

/// Puts every value on the union of their level grids.
fn unify_levels(values: Vec<FuzzyNumber>) -> Vec<FuzzyNumber> {
    let first = values[0].levels().to_vec();
    if values.iter().all(|v| v.levels() == first.as_slice()) {
        return values;
    }
    let grid = values.iter().skip(1).fold(first, |g, v| union_grid(&g, v.levels()));
    values.iter().map(|v| v.resample(&grid)).collect()
}

pub fn uniform_nodes(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 || !(a < b) {
        return Err(Error::InvalidFunction(format!("cannot build {n} intervals on [{a}, {b}]")));
    }
    let h = (b - a) / n as f64;
    Ok((0..=n).map(|i| if i == n { b } else { a + i as f64 * h }).collect())
}

/// Finite truncation of an element of `l^p`, `m`, `c` or `c⁰`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FuzzyNumber>", into = "Vec<FuzzyNumber>")]
pub struct FuzzySequence {
    terms: Vec<FuzzyNumber>,
}

impl FuzzySequence {
    pub fn new(terms: Vec<FuzzyNumber>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter("fuzzy sequence must be non-empty".into()));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[FuzzyNumber] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&FuzzyNumber, &FuzzyNumber) -> Result<FuzzyNumber>) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        let terms = self.terms.iter().zip(&other.terms).map(|(x, y)| f(x, y)).collect::<Result<Vec<_>>>()?;
        Ok(Self { terms })
    }

    pub fn map(&self, f: impl Fn(&FuzzyNumber) -> FuzzyNumber) -> Self {
        Self { terms: self.terms.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&FuzzyNumber) -> Result<FuzzyNumber>) -> Result<Self> {
        Ok(Self { terms: self.terms.iter().map(f).collect::<Result<Vec<_>>>()? })
    }

    fn termwise_distances(&self, other: &Self) -> Result<Vec<f64>> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.terms.iter().zip(&other.terms).map(|(x, y)| x.distance(y)).collect())
    }
}

impl TryFrom<Vec<FuzzyNumber>> for FuzzySequence {
    type Error = Error;

    fn try_from(terms: Vec<FuzzyNumber>) -> Result<Self> {
        Self::new(terms)
    }
}

impl From<FuzzySequence> for Vec<FuzzyNumber> {
    fn from(s: FuzzySequence) -> Self {
        s.terms
    }
}

/// Metric carried by a function-space element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionMetric {
    /// `D*`, the sup metric of `C([a, b]; R_F)`.
    Sup,
    /// `D_p` of `L^p([a, b]; R_F)`.
    Lp(f64),
}

/// Metric carried by a sequence-space element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceMetric {
    /// `ρ_p` of `l^p`.
    RhoP(f64),
    /// `μ` of `m`, `c`, `c⁰`.
    Mu,
}

/// `D*(f, g) = max_x D(f(x), g(x))` over the (union) node grid.
pub fn sup_distance(f: &FuzzyFunction, g: &FuzzyFunction) -> Result<f64> {
    let (_, d) = f.pointwise_distances(g)?;
    Ok(d.into_iter().fold(0.0, f64::max))
}

/// `D_p(f, g) = (∫_a^b D(f(x), g(x))^p dx)^{1/p}`, composite trapezoid on
/// the nodes.
pub fn lp_distance(f: &FuzzyFunction, g: &FuzzyFunction, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("D_p needs p >= 1, got {p}")));
    }
    let (nodes, d) = f.pointwise_distances(g)?;
    let integrand: Vec<f64> = d.iter().map(|x| x.powf(p)).collect();
    Ok(crate::fuzzy::trapezoid(&nodes, &integrand).powf(1.0 / p))
}

/// `D_p*(f, g) = Σ_i D*(f^(i), g^(i))`, with derivatives supplied by the
/// caller as `[f, f', ..., f^(p)]`.
pub fn dp_star_distance(f: &[FuzzyFunction], g: &[FuzzyFunction]) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::ArityMismatch(f.len(), g.len()));
    }
    f.iter().zip(g).map(|(a, b)| sup_distance(a, b)).sum()
}

/// `ρ_p` or `μ` between two sequences of equal length.
pub fn sequence_distance(x: &FuzzySequence, y: &FuzzySequence, metric: SequenceMetric) -> Result<f64> {
    let d = x.termwise_distances(y)?;
    Ok(match metric {
        SequenceMetric::Mu => d.into_iter().fold(0.0, f64::max),
        SequenceMetric::RhoP(p) => {
            if !(p >= 1.0) {
                return Err(Error::InvalidParameter(format!("rho_p needs p >= 1, got {p}")));
            }
            d.iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p)
        }
    })
}

/// `d(w1, w2) = max_i d_i(w1_i, w2_i)` on a product.
pub fn box_distance(w1: &[Element], w2: &[Element]) -> Result<f64> {
    if w1.len() != w2.len() {
        return Err(Error::ArityMismatch(w1.len(), w2.len()));
    }
    w1.iter().zip(w2).try_fold(0.0, |acc, (a, b)| Ok(f64::max(acc, a.distance(b)?)))
}

/// An element of one of the supported spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Number(FuzzyNumber),
    Function(FuzzyFunction, FunctionMetric),
    Sequence(FuzzySequence, SequenceMetric),
    /// Cartesian product with the box metric.
    Product(Vec<Element>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ElementRepr {
    Number(FuzzyNumber),
    Function { function: FuzzyFunction, metric: FunctionMetric },
    Sequence { sequence: FuzzySequence, metric: SequenceMetric },
    Product(Vec<Element>),
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match ElementRepr::deserialize(d)? {
            ElementRepr::Number(u) => Element::Number(u),
            ElementRepr::Function { function, metric } => Element::Function(function, metric),
            ElementRepr::Sequence { sequence, metric } => Element::Sequence(sequence, metric),
            ElementRepr::Product(c) => Element::Product(c),
        })
    }
}

impl From<Element> for ElementRepr {
    fn from(e: Element) -> Self {
        match e {
            Element::Number(u) => ElementRepr::Number(u),
            Element::Function(function, metric) => ElementRepr::Function { function, metric },
            Element::Sequence(sequence, metric) => ElementRepr::Sequence { sequence, metric },
            Element::Product(c) => ElementRepr::Product(c),
        }
    }
}

impl From<FuzzyNumber> for Element {
    fn from(u: FuzzyNumber) -> Self {
        Element::Number(u)
    }
}

impl From<FuzzyFunction> for Element {
    fn from(f: FuzzyFunction) -> Self {
        Element::Function(f, FunctionMetric::Sup)
    }
}

impl Element {
    pub fn pair(u: impl Into<Element>, v: impl Into<Element>) -> Self {
        Element::Product(vec![u.into(), v.into()])
    }

    pub fn kind(&self) -> String {
        match self {
            Element::Number(_) => "number".into(),
            Element::Function(_, m) => format!("function[{m:?}]"),
            Element::Sequence(s, m) => format!("sequence[{};{m:?}]", s.len()),
            Element::Product(c) => format!("product({})", c.iter().map(Element::kind).collect::<Vec<_>>().join(",")),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::SpaceMismatch(format!("{} vs {}", self.kind(), other.kind()))
    }

    pub fn as_number(&self) -> Option<&FuzzyNumber> {
        match self {
            Element::Number(u) => Some(u),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<&[Element]> {
        match self {
            Element::Product(c) => Some(c),
            _ => None,
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Element::Number(u), Element::Number(v)) => Ok(Element::Number(u.plus(v))),
            (Element::Function(f, m1), Element::Function(g, m2)) if m1 == m2 => Ok(Element::Function(f.plus(g)?, *m1)),
            (Element::Sequence(x, m1), Element::Sequence(y, m2)) if m1 == m2 => {
                Ok(Element::Sequence(x.zip_with(y, |a, b| Ok(a.plus(b)))?, *m1))
            }
            (Element::Product(a), Element::Product(b)) => {
                if a.len() != b.len() {
                    return Err(Error::ArityMismatch(a.len(), b.len()));
                }
                Ok(Element::Product(a.iter().zip(b).map(|(x, y)| x.plus(y)).collect::<Result<_>>()?))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn scale(&self, lambda: f64) -> Self {
        self.map_numbers(|u| u.scale(lambda))
    }

    pub fn hukuhara_diff(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Element::Number(u), Element::Number(v)) => Ok(Element::Number(u.hukuhara_diff(v)?)),
            (Element::Function(f, m1), Element::Function(g, m2)) if m1 == m2 => {
                Ok(Element::Function(f.hukuhara_diff(g)?, *m1))
            }
            (Element::Sequence(x, m1), Element::Sequence(y, m2)) if m1 == m2 => {
                Ok(Element::Sequence(x.zip_with(y, |a, b| a.hukuhara_diff(b))?, *m1))
            }
            (Element::Product(a), Element::Product(b)) => {
                if a.len() != b.len() {
                    return Err(Error::ArityMismatch(a.len(), b.len()));
                }
                Ok(Element::Product(a.iter().zip(b).map(|(x, y)| x.hukuhara_diff(y)).collect::<Result<_>>()?))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    /// Distance in the element's own metric.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        match (self, other) {
            (Element::Number(u), Element::Number(v)) => Ok(u.distance(v)),
            (Element::Function(f, m1), Element::Function(g, m2)) if m1 == m2 => match m1 {
                FunctionMetric::Sup => sup_distance(f, g),
                FunctionMetric::Lp(p) => lp_distance(f, g, *p),
            },
            (Element::Sequence(x, m1), Element::Sequence(y, m2)) if m1 == m2 => sequence_distance(x, y, *m1),
            (Element::Product(a), Element::Product(b)) => box_distance(a, b),
            _ => Err(self.mismatch(other)),
        }
    }

    /// `||x|| = d(x, 0)`.
    pub fn norm(&self) -> f64 {
        self.distance(&self.zero_like()).expect("element and its zero share a space")
    }

    pub fn zero_like(&self) -> Self {
        self.map_numbers(FuzzyNumber::zero_like)
    }

    /// Applies `f` to every fuzzy number inside the element.
    pub fn map_numbers(&self, f: impl Fn(&FuzzyNumber) -> FuzzyNumber + Copy) -> Self {
        match self {
            Element::Number(u) => Element::Number(f(u)),
            Element::Function(g, m) => Element::Function(g.map(f), *m),
            Element::Sequence(s, m) => Element::Sequence(s.map(f), *m),
            Element::Product(c) => Element::Product(c.iter().map(|e| e.map_numbers(f)).collect()),
        }
    }

    /// Fallible pointwise map; products are rejected so that operators
    /// defined on `R_F` lift to function and sequence spaces only.
    pub fn try_map_pointwise(&self, f: impl Fn(&FuzzyNumber) -> Result<FuzzyNumber>) -> Result<Self> {
        match self {
            Element::Number(u) => Ok(Element::Number(f(u)?)),
            Element::Function(g, m) => Ok(Element::Function(g.try_map(f)?, *m)),
            Element::Sequence(s, m) => Ok(Element::Sequence(s.try_map(f)?, *m)),
            Element::Product(_) => Err(Error::SpaceMismatch(format!("pointwise operator applied to {}", self.kind()))),
        }
    }

    /// Every fuzzy number inside the element, in order.
    pub fn numbers(&self) -> Vec<&FuzzyNumber> {
        match self {
            Element::Number(u) => vec![u],
            Element::Function(g, _) => g.values().iter().collect(),
            Element::Sequence(s, _) => s.terms().iter().collect(),
            Element::Product(c) => c.iter().flat_map(Element::numbers).collect(),
        }
    }

    /// Largest violation of the level-set invariants over all contained
    /// numbers.
    pub fn invariant_violation(&self) -> f64 {
        self.numbers().iter().map(|u| u.invariant_violation()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.numbers().iter().all(|u| u.norm() == 0.0)
    }

    /// Checks that `self` and `other` live in the same space.
    pub fn same_space(&self, other: &Self) -> bool {
        match (self, other) {
            (Element::Number(_), Element::Number(_)) => true,
            (Element::Function(f, m1), Element::Function(g, m2)) => m1 == m2 && f.domain() == g.domain(),
            (Element::Sequence(x, m1), Element::Sequence(y, m2)) => m1 == m2 && x.len() == y.len(),
            (Element::Product(a), Element::Product(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_space(y))
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tri(l: f64, c: f64, r: f64) -> FuzzyNumber {
        FuzzyNumber::triangular(l, c, r, 64).unwrap()
    }

    fn konst(u: &FuzzyNumber) -> FuzzyFunction {
        FuzzyFunction::constant(0.0, 1.0, 16, u).unwrap()
    }

    #[test]
    fn sup_metric_examples() {
        let f = konst(&tri(0.0, 1.0, 2.0));
        let g = konst(&tri(1.0, 2.0, 3.0));
        assert_eq!(sup_distance(&f, &f).unwrap(), 0.0);
        assert_abs_diff_eq!(sup_distance(&f, &g).unwrap(), 1.0, epsilon = 1e-15);
        let h = FuzzyFunction::sample(0.0, 1.0, 16, |x| tri(-x, 0.0, x * x)).unwrap();
        assert_abs_diff_eq!(
            sup_distance(&f.plus(&h).unwrap(), &g.plus(&h).unwrap()).unwrap(),
            sup_distance(&f, &g).unwrap(),
            epsilon = 1e-15
        );
        let other = FuzzyFunction::constant(0.0, 2.0, 4, &tri(0.0, 1.0, 2.0)).unwrap();
        assert!(matches!(sup_distance(&f, &other), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn lp_metric_examples() {
        let f = konst(&tri(0.0, 1.0, 2.0));
        let z = konst(&FuzzyNumber::zero());
        assert_eq!(lp_distance(&f, &f, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(lp_distance(&f, &z, 1.0).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(lp_distance(&f, &z, 2.0).unwrap(), 2.0, epsilon = 1e-14);
        assert!(lp_distance(&f, &z, 0.5).is_err());
    }

    #[test]
    fn dp_star_examples() {
        let f = konst(&tri(0.0, 1.0, 2.0));
        let zero = konst(&FuzzyNumber::zero());
        let fp = konst(&tri(0.0, 1.0, 2.0));
        assert_eq!(dp_star_distance(std::slice::from_ref(&f), std::slice::from_ref(&f)).unwrap(), 0.0);
        assert_abs_diff_eq!(
            dp_star_distance(&[f.clone(), zero.clone()], &[f.clone(), fp]).unwrap(),
            2.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            dp_star_distance(std::slice::from_ref(&f), &[f.clone(), zero]),
            Err(Error::ArityMismatch(1, 2))
        ));
    }

    #[test]
    fn sequence_metric_examples() {
        let x = FuzzySequence::new(vec![tri(0.0, 1.0, 2.0), FuzzyNumber::zero()]).unwrap();
        let y = FuzzySequence::new(vec![FuzzyNumber::zero(), FuzzyNumber::zero()]).unwrap();
        assert_eq!(sequence_distance(&x, &x, SequenceMetric::Mu).unwrap(), 0.0);
        assert_eq!(sequence_distance(&x, &y, SequenceMetric::RhoP(1.0)).unwrap(), 2.0);
        assert_eq!(sequence_distance(&x, &y, SequenceMetric::Mu).unwrap(), 2.0);
        assert_abs_diff_eq!(sequence_distance(&x, &y, SequenceMetric::RhoP(2.0)).unwrap(), 2.0, epsilon = 1e-15);
        let short = FuzzySequence::new(vec![FuzzyNumber::zero()]).unwrap();
        assert!(matches!(sequence_distance(&x, &short, SequenceMetric::Mu), Err(Error::LengthMismatch(2, 1))));
        assert!(FuzzySequence::new(vec![]).is_err());
    }

    #[test]
    fn box_metric_examples() {
        let w1 = Element::pair(tri(0.0, 1.0, 2.0), FuzzyNumber::zero());
        let w2 = Element::pair(FuzzyNumber::zero(), FuzzyNumber::zero());
        assert_eq!(w1.distance(&w1).unwrap(), 0.0);
        assert_eq!(w1.distance(&w2).unwrap(), 2.0);
        let h = Element::pair(tri(-1.0, 0.0, 3.0), tri(2.0, 2.5, 2.5));
        assert_abs_diff_eq!(w1.plus(&h).unwrap().distance(&w2.plus(&h).unwrap()).unwrap(), 2.0, epsilon = 1e-15);
        let w3 = Element::Product(vec![FuzzyNumber::zero().into()]);
        assert!(matches!(w1.distance(&w3), Err(Error::ArityMismatch(2, 1))));
    }

    #[test]
    fn function_nodes_resample_to_union() {
        let f = FuzzyFunction::sample(0.0, 1.0, 4, |x| tri(0.0, x, 1.0)).unwrap();
        let g = FuzzyFunction::sample(0.0, 1.0, 3, |x| tri(0.0, x, 1.0)).unwrap();
        // affine in x, so interpolation is exact
        assert!(sup_distance(&f, &g).unwrap() < 1e-15);
        assert_eq!(f.plus(&g).unwrap().nodes().len(), 7);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let u: Element = tri(0.0, 1.0, 2.0).into();
        let f: Element = konst(&tri(0.0, 1.0, 2.0)).into();
        assert!(matches!(u.plus(&f), Err(Error::SpaceMismatch(_))));
        assert!(!u.same_space(&f));
    }

    #[test]
    fn function_json_codec() {
        let f = FuzzyFunction::sample(0.0, 1.0, 2, |x| tri(x, x + 1.0, x + 2.0)).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: FuzzyFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let short = r#"{"a":0,"b":1,"nodes":[0,1],"values":[{"tri":[0,1,2]},{"tri":[1,2,3]}]}"#;
        let g: FuzzyFunction = serde_json::from_str(short).unwrap();
        assert_abs_diff_eq!(g.value_at(0.5).distance(&tri(0.5, 1.5, 2.5)), 0.0, epsilon = 1e-15);
        assert!(serde_json::from_str::<FuzzyFunction>(
            r#"{"a":0,"b":1,"nodes":[0,0.5],"values":[{"tri":[0,1,2]},{"tri":[0,1,2]}]}"#
        )
        .is_err());
    }
}
