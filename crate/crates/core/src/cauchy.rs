//! Fuzzy Cauchy problems `u' = A[u] ⊕ g`, `u(0) = u0`, solved by variation
//! of parameters, plus the homogeneous second-order problem
//! (`w'' = A[w]`, `w'(0) = 0`), the fuzzy wave equation and a
//! finite-difference residual checker for generalized derivatives.

use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;
use crate::operators::{LinearOperator, Operator};
use crate::semigroup::{required_order, SemigroupEvaluator, SeriesKind};
use crate::spaces::{Element, FuzzyFunction};

pub const DEFAULT_TIME_NODES: usize = 64;
pub const MAX_DOUBLINGS: u32 = 20;

pub type ForcingFn = Arc<dyn Fn(f64) -> Element + Send + Sync>;

/// The inhomogeneous term `g`.
#[derive(Clone)]
pub enum Forcing {
    Zero,
    Constant(Element),
    Function(ForcingFn),
}

impl fmt::Debug for Forcing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Forcing::Zero => write!(f, "Zero"),
            Forcing::Constant(e) => f.debug_tuple("Constant").field(e).finish(),
            Forcing::Function(_) => write!(f, "Function(..)"),
        }
    }
}

impl Forcing {
    pub fn is_zero(&self) -> bool {
        match self {
            Forcing::Zero => true,
            Forcing::Constant(e) => e.is_zero(),
            Forcing::Function(_) => false,
        }
    }

    /// `g(t)`, with `Zero` shaped like `like`.
    pub fn at(&self, t: f64, like: &Element) -> Element {
        match self {
            Forcing::Zero => like.zero_like(),
            Forcing::Constant(e) => e.clone(),
            Forcing::Function(f) => f(t),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CauchyProblem {
    pub operator: Operator,
    pub forcing: Forcing,
    pub initial: Element,
    /// Second-order problems only.
    pub initial_velocity: Option<Element>,
    pub horizon: f64,
    pub tol: f64,
}

impl CauchyProblem {
    pub fn first_order(operator: Operator, initial: Element, forcing: Forcing, horizon: f64, tol: f64) -> Result<Self> {
        let p = Self { operator, forcing, initial, initial_velocity: None, horizon, tol };
        p.validate()?;
        Ok(p)
    }

    /// `w'' = A[w]`, `w(0) = initial`, `w'(0) = 0`.
    pub fn second_order(operator: Operator, initial: Element, horizon: f64, tol: f64) -> Result<Self> {
        let velocity = initial.zero_like();
        let p = Self { operator, forcing: Forcing::Zero, initial, initial_velocity: Some(velocity), horizon, tol };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!("horizon must be positive, got {}", self.horizon)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", self.tol)));
        }
        // the operator must accept the initial state
        self.operator.apply(&self.initial)?;
        if let Forcing::Constant(g) = &self.forcing {
            if !g.same_space(&self.initial) {
                return Err(Error::SpaceMismatch(format!("forcing {} vs state {}", g.kind(), self.initial.kind())));
            }
        }
        Ok(())
    }

    fn evaluator(&self) -> Result<SemigroupEvaluator> {
        SemigroupEvaluator::new(self.operator.clone(), SeriesKind::Exp, self.tol)
    }

    pub fn default_grid(&self) -> Vec<f64> {
        uniform_time_grid(self.horizon, DEFAULT_TIME_NODES)
    }
}

/// `n` equally spaced times on `[0, horizon]` (just `[0]` when `n < 2` or
/// the horizon is zero).
pub fn uniform_time_grid(horizon: f64, n: usize) -> Vec<f64> {
    if n < 2 || horizon == 0.0 {
        return vec![0.0];
    }
    let last = n - 1;
    (0..n).map(|i| if i == last { horizon } else { horizon * i as f64 / last as f64 }).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Element>,
}

impl Trajectory {
    /// Largest pointwise distance to another trajectory on the same times.
    pub fn max_distance(&self, other: &Trajectory) -> Result<f64> {
        self.distances(other).map(|d| d.into_iter().fold(0.0, f64::max))
    }

    pub fn distances(&self, other: &Trajectory) -> Result<Vec<f64>> {
        if self.times != other.times {
            return Err(Error::LengthMismatch(self.times.len(), other.times.len()));
        }
        self.states.iter().zip(&other.states).map(|(a, b)| a.distance(b)).collect()
    }

    /// Largest level-set invariant violation over all states.
    pub fn invariant_violation(&self) -> f64 {
        self.states.iter().map(Element::invariant_violation).fold(0.0, f64::max)
    }

    /// CSV of the level bands `[u]^r` at each time, one row per contained
    /// fuzzy number and level.
    pub fn to_csv(&self, levels: &[f64]) -> String {
        let mut out = String::from("t,component,r,lower,upper\n");
        for (t, state) in self.times.iter().zip(&self.states) {
            for (k, u) in state.numbers().into_iter().enumerate() {
                for &r in levels {
                    let (lo, hi) = u.cut_at(r);
                    let _ = writeln!(out, "{t},{k},{r},{lo},{hi}");
                }
            }
        }
        out
    }
}

pub const CSV_BAND_LEVELS: [f64; 3] = [0.0, 0.5, 1.0];

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.first() != Some(&0.0) {
        return Err(Error::InvalidParameter("time grid must start at 0".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) || grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter("time grid must be finite and strictly increasing".into()));
    }
    Ok(())
}

/// Composite trapezoid `⊕_i (Δs/2) ⊙ (f(s_i) ⊕ f(s_{i+1}))` on `[t0, t1]`.
/// All weights are nonnegative, so this is the classical rule on each
/// endpoint function.
pub fn integrate_fuzzy(f: &dyn Fn(f64) -> Result<Element>, t0: f64, t1: f64, n: usize) -> Result<Element> {
    if n == 0 || !(t1 >= t0) {
        return Err(Error::InvalidParameter(format!("trapezoid on [{t0}, {t1}] with {n} panels")));
    }
    let ds = (t1 - t0) / n as f64;
    let node = |i: usize| if i == n { t1 } else { t0 + i as f64 * ds };
    let mut acc = f(t0)?.scale(ds / 2.0);
    for i in 1..n {
        acc = acc.plus(&f(node(i))?.scale(ds))?;
    }
    acc.plus(&f(t1)?.scale(ds / 2.0))
}

/// `∫_0^t T(t - s) g(s) ds`, doubling the panel count until successive
/// results are within `tol`. Each doubling reuses the previous sum:
/// `I_{2n} = ½ ⊙ I_n ⊕ (Δ/2) ⊙ Σ f(midpoints)`.
fn duhamel_integral(ev: &SemigroupEvaluator, g: &Forcing, like: &Element, t: f64, tol: f64) -> Result<Element> {
    let f = |s: f64| ev.exp_apply(t - s, &g.at(s, like));
    let mut n = 1usize;
    let mut current = integrate_fuzzy(&f, 0.0, t, 1)?;
    let mut change = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        let width = t / n as f64;
        let mut mids = like.zero_like();
        for i in 0..n {
            mids = mids.plus(&f((i as f64 + 0.5) * width)?)?;
        }
        let refined = current.scale(0.5).plus(&mids.scale(width / 2.0))?;
        change = refined.distance(&current)?;
        current = refined;
        n *= 2;
        if change <= tol {
            log::debug!("quadrature at t={t} converged with {n} panels");
            return Ok(current);
        }
    }
    Err(Error::QuadratureStall { t, doublings: MAX_DOUBLINGS, change })
}

/// `u(t) = T(t)(u0) ⊕ ∫_0^t T(t-s) g(s) ds` at a single time. Negative
/// times are accepted for homogeneous problems only (experimental: the
/// series is summed literally and supports widen).
pub fn solve_first_order_at(p: &CauchyProblem, t: f64) -> Result<Element> {
    if p.initial_velocity.is_some() {
        return Err(Error::InvalidParameter("first-order solver given an initial velocity".into()));
    }
    let ev = p.evaluator()?;
    let free = ev.exp_apply(t, &p.initial)?;
    if p.forcing.is_zero() || t == 0.0 {
        return Ok(free);
    }
    if t < 0.0 {
        return Err(Error::InvalidParameter("forced problems are solved for t >= 0 only".into()));
    }
    let forced = duhamel_integral(&ev, &p.forcing, &p.initial, t, p.tol)?;
    free.plus(&forced)
}

pub fn solve_first_order(p: &CauchyProblem, grid: &[f64]) -> Result<Trajectory> {
    check_grid(grid)?;
    let states = grid.par_iter().map(|&t| solve_first_order_at(p, t)).collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { times: grid.to_vec(), states })
}

/// `w(t) = cosh(t⊙A)(w0)` for `w'' = A[w]`, `w'(0) = 0`.
pub fn solve_second_order_at(p: &CauchyProblem, t: f64) -> Result<Element> {
    match &p.initial_velocity {
        Some(v) if v.is_zero() => {}
        Some(_) => return Err(Error::UnsupportedVelocity),
        None => return Err(Error::InvalidParameter("second-order solver needs an initial velocity".into())),
    }
    if !p.forcing.is_zero() {
        return Err(Error::InvalidParameter("second-order problems are homogeneous".into()));
    }
    SemigroupEvaluator::new(p.operator.clone(), SeriesKind::Cosh, p.tol)?.evaluate(t, &p.initial)
}

pub fn solve_second_order(p: &CauchyProblem, grid: &[f64]) -> Result<Trajectory> {
    check_grid(grid)?;
    let states = grid.par_iter().map(|&t| solve_second_order_at(p, t)).collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { times: grid.to_vec(), states })
}

/// Solves whichever order the problem describes.
pub fn solve(p: &CauchyProblem, grid: &[f64]) -> Result<Trajectory> {
    if p.initial_velocity.is_some() {
        solve_second_order(p, grid)
    } else {
        solve_first_order(p, grid)
    }
}

/// Fuzzy wave equation `u_tt = u_xx`, `u(0,x) = u1(x)`, `u_t(0,x) = u2(x)`:
///
/// `u(t,x) = Σ_{p<=m} t^{2p}/(2p)! ⊙ u1^{(2p)}(x) ⊕ t ⊙ u2(x)`.
///
/// `u1(x, k)` returns the `k`-th derivative of `u1` at `x` (only even `k`
/// are requested); `bound` must dominate `||u1^{(2p)}(x)||` uniformly, and
/// fixes the truncation order.
pub fn solve_wave(
    u1: &(dyn Fn(f64, usize) -> FuzzyNumber + Sync),
    bound: Option<f64>,
    u2: &FuzzyFunction,
    t: f64,
    xgrid: &[f64],
    tol: f64,
) -> Result<FuzzyFunction> {
    let bound = match bound {
        Some(b) if b.is_finite() && b >= 0.0 => b,
        _ => return Err(Error::MissingDerivativeBound),
    };
    let m = required_order(t, 1.0, tol / bound.max(1.0), SeriesKind::Cosh)?;
    let values: Vec<FuzzyNumber> = xgrid
        .par_iter()
        .map(|&x| {
            let mut acc = u1(x, 0);
            let mut coef = 1.0;
            for p in 1..=m {
                coef *= t * t / ((2 * p - 1) * (2 * p)) as f64;
                acc = acc.plus(&u1(x, 2 * p).scale(coef));
            }
            acc.plus(&u2.value_at(x).scale(t))
        })
        .collect();
    let (a, b) = match (xgrid.first(), xgrid.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::InvalidFunction("empty spatial grid".into())),
    };
    FuzzyFunction::new(a, b, xgrid.to_vec(), values)
}

/// How each generalized difference form is turned into one residual.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferenceScheme {
    /// `½ ⊙ (forward ⊕ backward)`: second-order accurate.
    #[default]
    Symmetric,
    /// Worse of the forward and backward quotients.
    OneSided,
}

fn leaves(e: &Element) -> Vec<&Element> {
    match e {
        Element::Product(c) => c.iter().flat_map(leaves).collect(),
        other => vec![other],
    }
}

/// Residual of the four generalized derivative forms at one leaf; `None`
/// if no form has both H-differences.
fn leaf_residual(
    before: &Element,
    here: &Element,
    after: &Element,
    target: &Element,
    h: f64,
    scheme: DifferenceScheme,
) -> Result<Option<f64>> {
    let quotient = |a: &Element, b: &Element, factor: f64| a.hukuhara_diff(b).ok().map(|d| d.scale(factor));
    // forward: (u(t+h) ⊖ u(t))/h or (u(t) ⊖ u(t+h))/(-h)
    let fwd = [quotient(after, here, 1.0 / h), quotient(here, after, -1.0 / h)];
    // backward: (u(t) ⊖ u(t-h))/h or (u(t-h) ⊖ u(t))/(-h)
    let bwd = [quotient(here, before, 1.0 / h), quotient(before, here, -1.0 / h)];
    let mut best: Option<f64> = None;
    for (i, j) in [(0, 0), (1, 1), (0, 1), (1, 0)] {
        let (Some(f), Some(b)) = (&fwd[i], &bwd[j]) else { continue };
        let r = match scheme {
            DifferenceScheme::Symmetric => f.plus(b)?.scale(0.5).distance(target)?,
            DifferenceScheme::OneSided => f.distance(target)?.max(b.distance(target)?),
        };
        best = Some(best.map_or(r, |x: f64| x.min(r)));
    }
    Ok(best)
}

/// Max over `times` of the generalized-derivative residual
/// `min_form d(quotient, A[u(t)] ⊕ g(t))`. Product components choose
/// their form independently; the result uses the box metric. `u` is
/// re-evaluated at `t ± h`.
pub fn residual_check(
    u: &(dyn Fn(f64) -> Result<Element> + Sync),
    op: &dyn LinearOperator,
    g: &Forcing,
    times: &[f64],
    h: f64,
    scheme: DifferenceScheme,
) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("difference step must be positive, got {h}")));
    }
    let per_time = times
        .par_iter()
        .map(|&t| {
            let (before, here, after) = (u(t - h)?, u(t)?, u(t + h)?);
            let target = op.apply(&here)?.plus(&g.at(t, &here))?;
            let (lb, lh, la, lt) = (leaves(&before), leaves(&here), leaves(&after), leaves(&target));
            if lb.len() != lh.len() || la.len() != lh.len() || lt.len() != lh.len() {
                return Err(Error::ArityMismatch(lh.len(), lt.len()));
            }
            let mut worst = 0.0f64;
            for k in 0..lh.len() {
                match leaf_residual(lb[k], lh[k], la[k], lt[k], h, scheme)? {
                    Some(r) => worst = worst.max(r),
                    None => return Err(Error::NoApplicableForm { t }),
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(per_time.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form;
    use crate::fuzzy::DEFAULT_LEVEL_COUNT;
    use crate::operators::{builtin, identity, lift_matrix, zero_operator, BuiltinKind};
    use approx::assert_abs_diff_eq;

    fn tri(l: f64, c: f64, r: f64) -> FuzzyNumber {
        FuzzyNumber::triangular(l, c, r, DEFAULT_LEVEL_COUNT).unwrap()
    }

    fn crisp(x: f64) -> Element {
        FuzzyNumber::crisp(x).into()
    }

    fn scalar(e: &Element) -> f64 {
        e.as_number().unwrap().lower()[0]
    }

    #[test]
    fn trapezoid_examples() {
        let u: Element = tri(0.0, 1.0, 2.0).into();
        let c = integrate_fuzzy(&|_| Ok(u.clone()), 0.0, 1.0, 7).unwrap();
        assert!(c.distance(&u).unwrap() < 1e-15);
        for n in [1, 3, 8] {
            let lin = integrate_fuzzy(&|s| Ok(u.scale(s)), 0.0, 1.0, n).unwrap();
            assert!(lin.distance(&u.scale(0.5)).unwrap() < 1e-15, "n={n}");
        }
        let sq = integrate_fuzzy(&|s| Ok(crisp(s * s)), 0.0, 1.0, 1024).unwrap();
        assert_abs_diff_eq!(scalar(&sq), 1.0 / 3.0, epsilon = 1e-6);
        assert!(integrate_fuzzy(&|_| Ok(u.clone()), 0.0, 1.0, 0).is_err());
    }

    #[test]
    fn homogeneous_first_order_is_the_semigroup() {
        let u0: Element = tri(0.0, 1.0, 2.0).into();
        let a = builtin(BuiltinKind::RemarkA, Some(tri(0.0, 1.0, 2.0))).unwrap();
        let p = CauchyProblem::first_order(a.clone(), u0.clone(), Forcing::Zero, 1.0, 1e-10).unwrap();
        let traj = solve_first_order(&p, &uniform_time_grid(1.0, 5)).unwrap();
        assert_eq!(traj.states[0], u0);
        let ev = SemigroupEvaluator::exp(a, 1e-10).unwrap();
        for (t, s) in traj.times.iter().zip(&traj.states) {
            assert_eq!(s, &ev.exp_apply(*t, &u0).unwrap());
        }
    }

    #[test]
    fn scalar_growth_matches_e() {
        let p = CauchyProblem::first_order(identity(), crisp(1.0), Forcing::Zero, 1.0, 1e-10).unwrap();
        let traj = solve_first_order(&p, &[0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(scalar(&traj.states[1]), std::f64::consts::E, epsilon = 1e-10);
    }

    #[test]
    fn forced_scalar_problem_matches_rk4() {
        // u' = -u + 1 (crisp), u(0) = 0 → 1 - e^{-t}; A = -I is linear for crisp data
        let minus = crate::operators::scaled(-1.0, identity());
        let p = CauchyProblem::first_order(minus, crisp(0.0), Forcing::Constant(crisp(1.0)), 1.0, 1e-9).unwrap();
        let traj = solve_first_order(&p, &[0.0, 0.5, 1.0]).unwrap();
        let rk4 = |t_end: f64| {
            let (mut u, n) = (0.0f64, 1000);
            let dt = t_end / n as f64;
            let f = |u: f64| 1.0 - u;
            for _ in 0..n {
                let k1 = f(u);
                let k2 = f(u + dt / 2.0 * k1);
                let k3 = f(u + dt / 2.0 * k2);
                let k4 = f(u + dt * k3);
                u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            u
        };
        for (t, s) in traj.times.iter().zip(&traj.states) {
            assert!((scalar(s) - rk4(*t)).abs() <= 1e-6, "t={t}");
        }
    }

    #[test]
    fn problem5_u_component_at_one() {
        let (u0, v0) = (tri(0.0, 1.0, 2.0), tri(1.0, 2.0, 3.0));
        let a = lift_matrix(vec![vec![1.0, 1.0], vec![-1.0, -1.0]]).unwrap();
        let p = CauchyProblem::first_order(a, Element::pair(u0, v0), Forcing::Zero, 1.0, 1e-10).unwrap();
        let w = solve_first_order_at(&p, 1.0).unwrap();
        let h1 = (1f64.exp().powi(2) - 3.0) / 4.0;
        let want = tri(1.0 - 4.0 * h1, 4.0, 7.0 + 4.0 * h1);
        assert!(w.components().unwrap()[0].as_number().unwrap().distance(&want) < 1e-9);
    }

    #[test]
    fn second_order_examples() {
        let (u0, v0) = (tri(0.0, 1.0, 2.0), tri(1.0, 2.0, 3.0));
        let w0 = Element::pair(u0.clone(), v0.clone());
        let a = lift_matrix(vec![vec![1.0, 1.0], vec![-1.0, -1.0]]).unwrap();
        let p = CauchyProblem::second_order(a.clone(), w0.clone(), 1.0, 1e-10).unwrap();
        let traj = solve_second_order(&p, &[0.0, 1.0]).unwrap();
        assert_eq!(traj.states[0], w0);
        let want = closed_form::problem6(&u0, &v0, 1.0);
        assert!(traj.states[1].distance(&want).unwrap() < 1e-9);
        let mut bad = p.clone();
        bad.initial_velocity = Some(Element::pair(FuzzyNumber::crisp(1.0), FuzzyNumber::zero()));
        assert!(matches!(solve_second_order(&bad, &[0.0]), Err(Error::UnsupportedVelocity)));
    }

    #[test]
    fn wave_examples() {
        let c = tri(0.0, 1.0, 2.0);
        let zero = FuzzyFunction::constant(0.0, 1.0, 8, &FuzzyNumber::zero()).unwrap();
        let xs: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
        let u1 = |x: f64, _k: usize| c.scale(x.exp());
        let u = solve_wave(&u1, Some(2.0 * 1f64.exp()), &zero, 1.0, &xs, 1e-10).unwrap();
        for (x, v) in xs.iter().zip(u.values()) {
            assert!(v.distance(&c.scale(1f64.cosh() * x.exp())) < 1e-9);
        }
        let at0 = solve_wave(&u1, Some(2.0 * 1f64.exp()), &zero, 0.0, &xs, 1e-10).unwrap();
        assert_eq!(at0.values()[3], c.scale(xs[3].exp()));
        let u2 = FuzzyFunction::constant(0.0, 1.0, 8, &c).unwrap();
        let only_velocity = solve_wave(&|_, _| FuzzyNumber::zero(), Some(0.0), &u2, 0.7, &xs, 1e-10).unwrap();
        assert!(only_velocity.values().iter().all(|v| v.distance(&c.scale(0.7)) < 1e-15));
        assert!(matches!(solve_wave(&u1, None, &zero, 1.0, &xs, 1e-10), Err(Error::MissingDerivativeBound)));
    }

    #[test]
    fn residual_examples() {
        let u0 = tri(0.0, 1.0, 2.0);
        let z = zero_operator();
        let konst = |_t: f64| Ok(Element::from(u0.clone()));
        let times = [0.25, 0.5, 0.75];
        assert_eq!(
            residual_check(&konst, z.as_ref(), &Forcing::Zero, &times, 1e-3, DifferenceScheme::Symmetric).unwrap(),
            0.0
        );

        let exp = |t: f64| Ok(crisp(t.exp()));
        let id = identity();
        let r =
            residual_check(&exp, id.as_ref(), &Forcing::Zero, &[0.5, 1.0], 1e-3, DifferenceScheme::OneSided).unwrap();
        assert!(r <= 2e-3 && r > 0.0);

        // first-order scheme: halving h roughly halves the residual
        let c = tri(0.0, 1.0, 2.0);
        let ra = builtin(BuiltinKind::RemarkA, Some(c.clone())).unwrap();
        let sol = |t: f64| Ok(Element::from(closed_form::rank_one(BuiltinKind::RemarkA, &c, &c, t).unwrap()));
        for h in [1e-2, 1e-3] {
            let full =
                residual_check(&sol, ra.as_ref(), &Forcing::Zero, &[1.0], h, DifferenceScheme::OneSided).unwrap();
            let half =
                residual_check(&sol, ra.as_ref(), &Forcing::Zero, &[1.0], h / 2.0, DifferenceScheme::OneSided).unwrap();
            assert!(half < full, "h={h}");
        }
    }

    #[test]
    fn no_applicable_form_is_reported() {
        // the step u(t+s) - u(t) = s (-r, 1-r) is non-nested for either sign
        // of s, so no H-difference exists in either orientation
        let twist = |t: f64| {
            let s = t - 1.0;
            Ok(Element::from(FuzzyNumber::from_level_fn(4, |r| (-2.0 + r - s * r, 2.0 - r + s * (1.0 - r))).unwrap()))
        };
        let z = zero_operator();
        assert!(matches!(
            residual_check(&twist, z.as_ref(), &Forcing::Zero, &[1.0], 1e-2, DifferenceScheme::Symmetric),
            Err(Error::NoApplicableForm { .. })
        ));
    }

    #[test]
    fn csv_has_three_bands() {
        let traj = Trajectory { times: vec![0.0], states: vec![tri(0.0, 1.0, 2.0).into()] };
        let csv = traj.to_csv(&CSV_BAND_LEVELS);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.contains("0,0,0.5,0.5,1.5"));
    }

    #[test]
    fn time_grid_and_json() {
        assert_eq!(uniform_time_grid(2.0, 3), vec![0.0, 1.0, 2.0]);
        assert_eq!(uniform_time_grid(0.0, 64), vec![0.0]);
        let traj =
            Trajectory { times: vec![0.0], states: vec![Element::pair(tri(0.0, 1.0, 2.0), FuzzyNumber::crisp(1.0))] };
        let s = serde_json::to_string(&traj).unwrap();
        assert_eq!(serde_json::from_str::<Trajectory>(&s).unwrap(), traj);
    }
}
