//! Seeded property suites over the whole library.
//!
//! Every property is measured as a maximum violation over its cases and
//! compared against a tolerance. Identities use violations relative to
//! `max(1, scale)`. "Witness" properties check that a law known to fail
//! really fails by the expected amount.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cauchy::{integrate_fuzzy, residual_check, solve_first_order_at, solve_second_order_at, CauchyProblem};
use crate::cauchy::{DifferenceScheme, Forcing};
use crate::closed_form;
use crate::error::{Error, Result};
use crate::fuzzy::{ts_partial_diff, FuzzyNumber, SymmetricTriangular};
use crate::operators::{
    builtin, canonical_probe_elements, lift_matrix, phi_distance, power, random_fuzzy, zero_operator, BuiltinKind,
    Operator,
};
use crate::semigroup::{generator_bound, required_order, SemigroupEvaluator, SeriesKind};
use crate::spaces::{
    lp_distance, sequence_distance, sup_distance, Element, FuzzyFunction, FuzzySequence, SequenceMetric,
};

pub const DEFAULT_CASES: usize = 1000;
pub const EXACT_TOL: f64 = 1e-12;
/// Series tolerance for the semigroup suite.
pub const SERIES_TOL: f64 = 1e-9;
pub const GENERATOR_STEPS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
pub const LAW_TIMES: [f64; 4] = [0.0, 0.25, 0.5, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Spaces,
    Operators,
    Semigroup,
    Solver,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["core", "spaces", "operators", "semigroup", "solver", "all"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Core, Suite::Spaces, Suite::Operators, Suite::Semigroup, Suite::Solver],
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Spaces => "spaces",
            Suite::Operators => "operators",
            Suite::Semigroup => "semigroup",
            Suite::Solver => "solver",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "core" => Suite::Core,
            "spaces" => Suite::Spaces,
            "operators" => Suite::Operators,
            "semigroup" => Suite::Semigroup,
            "solver" => Suite::Solver,
            "all" => Suite::All,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub property: String,
    pub cases: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One row of the generator-bound table.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRow {
    pub operator: String,
    pub h: f64,
    pub max_residual: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub cases: usize,
    pub results: Vec<PropertyResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generator_table: Vec<GeneratorRow>,
    pub passed: bool,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Runs `suite` with `cases` random cases per randomized property.
pub fn run(suite: Suite, seed: u64, cases: usize) -> Report {
    let mut results = Vec::new();
    let mut generator_table = Vec::new();
    for (k, part) in suite.parts().into_iter().enumerate() {
        let mut ctx = Ctx {
            suite: part.name(),
            rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64 * 0x9e37_79b9)),
            cases,
            results: Vec::new(),
        };
        match part {
            Suite::Core => core_suite(&mut ctx),
            Suite::Spaces => spaces_suite(&mut ctx),
            Suite::Operators => operators_suite(&mut ctx),
            Suite::Semigroup => generator_table = semigroup_suite(&mut ctx),
            Suite::Solver => solver_suite(&mut ctx),
            Suite::All => unreachable!(),
        }
        results.extend(ctx.results);
    }
    let passed = results.iter().all(|r| r.passed);
    Report { seed, cases, results, generator_table, passed }
}

struct Ctx {
    suite: &'static str,
    rng: ChaCha8Rng,
    cases: usize,
    results: Vec<PropertyResult>,
}

impl Ctx {
    /// Records `max_i f(i)` for `i < n` against `tol`. An error in any case
    /// fails the property and is noted.
    fn check(&mut self, property: &str, n: usize, tol: f64, mut f: impl FnMut(&mut ChaCha8Rng) -> Result<f64>) {
        let mut worst = 0.0f64;
        let mut note = None;
        for _ in 0..n {
            match f(&mut self.rng) {
                Ok(v) if v.is_nan() => {
                    worst = f64::INFINITY;
                    note.get_or_insert_with(|| "NaN violation".to_string());
                }
                Ok(v) => worst = worst.max(v),
                Err(e) => {
                    worst = f64::INFINITY;
                    note.get_or_insert_with(|| e.to_string());
                }
            }
        }
        self.push(property, n, worst, tol, worst <= tol, note);
    }

    fn push(
        &mut self,
        property: &str,
        cases: usize,
        max_violation: f64,
        tolerance: f64,
        passed: bool,
        note: Option<String>,
    ) {
        log::debug!("{}/{property}: {max_violation:e} (tol {tolerance:e})", self.suite);
        self.results.push(PropertyResult {
            suite: self.suite,
            property: property.to_string(),
            cases,
            max_violation,
            tolerance,
            passed,
            note,
        });
    }
}

const LEVELS: usize = 16;

fn rf(rng: &mut ChaCha8Rng) -> FuzzyNumber {
    let scale = [0.5, 1.0, 3.0][rng.gen_range(0..3)];
    random_fuzzy(rng, LEVELS, scale)
}

fn scalar(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-3.0..3.0)
}

fn rel(d: f64, scale: f64) -> f64 {
    d / scale.max(1.0)
}

fn tri(l: f64, c: f64, r: f64) -> FuzzyNumber {
    FuzzyNumber::triangular(l, c, r, crate::fuzzy::DEFAULT_LEVEL_COUNT).expect("ordered")
}

fn core_suite(ctx: &mut Ctx) {
    let n = ctx.cases;
    ctx.check("nesting", n, EXACT_TOL, |r| {
        let (u, v, k) = (rf(r), rf(r), scalar(r));
        let w = u.plus(&v.scale(k));
        Ok(u.invariant_violation().max(w.invariant_violation()))
    });
    ctx.check("metric_identity_symmetry", n, 0.0, |r| {
        let (u, v) = (rf(r), rf(r));
        Ok(u.distance(&u) + (u.distance(&v) - v.distance(&u)).abs())
    });
    ctx.check("metric_triangle", n, EXACT_TOL, |r| {
        let (u, v, w) = (rf(r), rf(r), rf(r));
        Ok(rel((u.distance(&w) - u.distance(&v) - v.distance(&w)).max(0.0), u.norm() + v.norm() + w.norm()))
    });
    ctx.check("translation_invariance", n, EXACT_TOL, |r| {
        let (u, v, w) = (rf(r), rf(r), rf(r));
        Ok(rel((u.plus(&w).distance(&v.plus(&w)) - u.distance(&v)).abs(), u.norm() + v.norm() + w.norm()))
    });
    ctx.check("scaling_of_distance", n, EXACT_TOL, |r| {
        let (u, v, k) = (rf(r), rf(r), scalar(r));
        Ok(rel((u.scale(k).distance(&v.scale(k)) - k.abs() * u.distance(&v)).abs(), k.abs() * (u.norm() + v.norm())))
    });
    ctx.check("distance_subadditivity", n, EXACT_TOL, |r| {
        let (u, v, w, e) = (rf(r), rf(r), rf(r), rf(r));
        let excess = u.plus(&v).distance(&w.plus(&e)) - u.distance(&w) - v.distance(&e);
        Ok(rel(excess.max(0.0), u.norm() + v.norm() + w.norm() + e.norm()))
    });
    ctx.check("add_commutative", n, 0.0, |r| {
        let (u, v) = (rf(r), rf(r));
        Ok(u.plus(&v).distance(&v.plus(&u)))
    });
    ctx.check("add_associative", n, EXACT_TOL, |r| {
        let (u, v, w) = (rf(r), rf(r), rf(r));
        Ok(rel(u.plus(&v).plus(&w).distance(&u.plus(&v.plus(&w))), u.norm() + v.norm() + w.norm()))
    });
    ctx.check("zero_neutral", n, 0.0, |r| {
        let u = rf(r);
        Ok(u.plus(&u.zero_like()).distance(&u))
    });
    ctx.check("scalar_distributive_same_sign", n, EXACT_TOL, |r| {
        let u = rf(r);
        let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let (a, b) = (sign * r.gen_range(0.0..3.0), sign * r.gen_range(0.0..3.0));
        Ok(rel(u.scale(a + b).distance(&u.scale(a).plus(&u.scale(b))), (a.abs() + b.abs()) * u.norm()))
    });
    ctx.check("scalar_distributive_over_add", n, EXACT_TOL, |r| {
        let (u, v, k) = (rf(r), rf(r), scalar(r));
        Ok(rel(u.plus(&v).scale(k).distance(&u.scale(k).plus(&v.scale(k))), k.abs() * (u.norm() + v.norm())))
    });
    ctx.check("scalar_associative", n, EXACT_TOL, |r| {
        let (u, a, b) = (rf(r), scalar(r), scalar(r));
        Ok(rel(u.scale(b).scale(a).distance(&u.scale(a * b)), (a * b).abs() * u.norm()))
    });
    ctx.check("norm_laws", n, EXACT_TOL, |r| {
        let (u, v, k) = (rf(r), rf(r), scalar(r));
        let s = u.norm() + v.norm();
        let homog = (u.scale(k).norm() - k.abs() * u.norm()).abs();
        let tri_ineq = (u.plus(&v).norm() - s).max(0.0);
        let reverse = ((u.norm() - v.norm()).abs() - u.distance(&v)).max(0.0);
        let neg = (-u.norm()).max(0.0);
        Ok(rel(homog.max(tri_ineq).max(reverse).max(neg), (1.0 + k.abs()) * s))
    });
    ctx.check("distance_between_multiples_nonneg", n, EXACT_TOL, |r| {
        let (u, a, b) = (rf(r), r.gen_range(0.0..3.0), r.gen_range(0.0..3.0));
        Ok(rel((u.scale(a).distance(&u.scale(b)) - (a - b).abs() * u.norm()).abs(), (a + b) * u.norm()))
    });

    // laws that fail for mixed signs: the violation is the gap to the
    // expected failure amount
    let u = tri(0.0, 1.0, 2.0);
    let sum = u.scale(1.0).plus(&u.scale(-1.0));
    let d_iv = sum.distance(&u.scale(0.0));
    ctx.push(
        "witness_mixed_sign_distributivity",
        1,
        (d_iv - 2.0).abs().max(sum.distance(&tri(-2.0, 0.0, 2.0))),
        EXACT_TOL,
        d_iv == 2.0,
        Some(format!("1⊙u ⊕ (-1)⊙u is at distance {d_iv} from 0⊙u (failure expected)")),
    );
    let d_viii = u.distance(&u.scale(-1.0));
    ctx.push(
        "witness_mixed_sign_multiples",
        1,
        (d_viii - 2.0).abs(),
        EXACT_TOL,
        d_viii == 2.0 && 2.0 * u.norm() == 4.0,
        Some(format!("D(u, -u) = {d_viii} while |1-(-1)| ||u|| = {} (failure expected)", 2.0 * u.norm())),
    );
    let zero_minus = FuzzyNumber::zero().hukuhara_diff(&u);
    ctx.push(
        "hukuhara_nonexistence",
        1,
        0.0,
        0.0,
        matches!(zero_minus, Err(Error::NotExists { .. })),
        Some("0 ⊖ (0,1,2) must not exist".into()),
    );
    ctx.check("hukuhara_roundtrip", n, EXACT_TOL, |r| {
        let (v, w) = (rf(r), rf(r));
        let u = v.plus(&w);
        let d = u.hukuhara_diff(&v)?;
        Ok(rel(d.plus(&v).distance(&u), u.norm() + v.norm()))
    });
    ctx.check("symmetric_partial_difference_total", n, EXACT_TOL, |r| {
        let s1 = SymmetricTriangular::new(scalar(r), r.gen_range(0.0..2.0))?;
        let s2 = SymmetricTriangular::new(scalar(r), r.gen_range(0.0..2.0))?;
        let (dir, d) = ts_partial_diff(&s1, &s2, LEVELS)?;
        let (x1, x2) = (s1.to_fuzzy(LEVELS)?, s2.to_fuzzy(LEVELS)?);
        let back = match dir {
            crate::fuzzy::Direction::Forward => d.plus(&x2).distance(&x1),
            crate::fuzzy::Direction::Reverse => d.plus(&x1).distance(&x2),
        };
        Ok(rel(back, x1.norm() + x2.norm()))
    });
}

const NODES: usize = 12;

fn random_function(rng: &mut ChaCha8Rng) -> Result<FuzzyFunction> {
    let nodes: Vec<f64> = (0..=NODES).map(|i| i as f64 / NODES as f64).collect();
    let values = (0..=NODES).map(|_| rf(rng)).collect();
    FuzzyFunction::new(0.0, 1.0, nodes, values)
}

fn random_sequence(rng: &mut ChaCha8Rng) -> Result<FuzzySequence> {
    FuzzySequence::new((0..8).map(|_| rf(rng)).collect())
}

fn spaces_suite(ctx: &mut Ctx) {
    let n = ctx.cases;
    ctx.check("sup_metric_scaling", n, EXACT_TOL, |r| {
        let (f, g, k) = (random_function(r)?, random_function(r)?, scalar(r));
        let d = sup_distance(&f, &g)?;
        Ok(rel((sup_distance(&f.scale(k), &g.scale(k))? - k.abs() * d).abs(), k.abs() * d))
    });
    ctx.check("sup_metric_translation", n, EXACT_TOL, |r| {
        let (f, g, h) = (random_function(r)?, random_function(r)?, random_function(r)?);
        let d = sup_distance(&f, &g)?;
        Ok(rel((sup_distance(&f.plus(&h)?, &g.plus(&h)?)? - d).abs(), d + 10.0))
    });
    ctx.check("sup_metric_subadditivity", n, EXACT_TOL, |r| {
        let (f, g, h, e) = (random_function(r)?, random_function(r)?, random_function(r)?, random_function(r)?);
        let (a, b) = (sup_distance(&f, &h)?, sup_distance(&g, &e)?);
        Ok(rel((sup_distance(&f.plus(&g)?, &h.plus(&e)?)? - a - b).max(0.0), a + b))
    });
    ctx.check("sup_metric_triangle", n, EXACT_TOL, |r| {
        let (f, g, h) = (random_function(r)?, random_function(r)?, random_function(r)?);
        let (a, b, c) = (sup_distance(&f, &h)?, sup_distance(&f, &g)?, sup_distance(&g, &h)?);
        Ok(rel((a - b - c).max(0.0), b + c))
    });
    ctx.check("lp_metric_scaling_translation", n, EXACT_TOL, |r| {
        let (f, g, h, k) = (random_function(r)?, random_function(r)?, random_function(r)?, scalar(r));
        let p = [1.0, 2.0, 3.5][r.gen_range(0..3)];
        let d = lp_distance(&f, &g, p)?;
        let scaled = (lp_distance(&f.scale(k), &g.scale(k), p)? - k.abs() * d).abs();
        let shifted = (lp_distance(&f.plus(&h)?, &g.plus(&h)?, p)? - d).abs();
        Ok(rel(scaled.max(shifted), (1.0 + k.abs()) * d))
    });
    ctx.check("sequence_metric_laws", n, EXACT_TOL, |r| {
        let (x, y, z, k) = (random_sequence(r)?, random_sequence(r)?, random_sequence(r)?, scalar(r));
        let metric = if r.gen_bool(0.5) { SequenceMetric::Mu } else { SequenceMetric::RhoP(r.gen_range(1.0..4.0)) };
        let d = sequence_distance(&x, &y, metric)?;
        let scale = |s: &FuzzySequence| s.map(|u| u.scale(k));
        let shift = |s: &FuzzySequence| -> Result<FuzzySequence> {
            FuzzySequence::new(s.terms().iter().zip(z.terms()).map(|(a, b)| a.plus(b)).collect())
        };
        let scaled = (sequence_distance(&scale(&x), &scale(&y), metric)? - k.abs() * d).abs();
        let shifted = (sequence_distance(&shift(&x)?, &shift(&y)?, metric)? - d).abs();
        Ok(rel(scaled.max(shifted), (1.0 + k.abs()) * d))
    });
    ctx.check("box_metric_laws", n, EXACT_TOL, |r| {
        let w1 = Element::pair(rf(r), random_function(r)?);
        let w2 = Element::pair(rf(r), random_function(r)?);
        let w3 = Element::pair(rf(r), random_function(r)?);
        let k = scalar(r);
        let d = w1.distance(&w2)?;
        let scaled = (w1.scale(k).distance(&w2.scale(k))? - k.abs() * d).abs();
        let shifted = (w1.plus(&w3)?.distance(&w2.plus(&w3)?)? - d).abs();
        let triangle = (w1.distance(&w3)? - d - w2.distance(&w3)?).max(0.0);
        Ok(rel(scaled.max(shifted).max(triangle), (1.0 + k.abs()) * (d + 10.0)))
    });
}

/// Builtins instantiated with `c = (0, 1, 2)`.
pub fn reference_builtins() -> Vec<(BuiltinKind, Operator)> {
    let c = tri(0.0, 1.0, 2.0);
    BuiltinKind::ALL
        .iter()
        .map(|&k| {
            let c = k.needs_constant().then(|| c.clone());
            (k, builtin(k, c).expect("reference constant is valid"))
        })
        .collect()
}

fn operators_suite(ctx: &mut Ctx) {
    let n = ctx.cases;
    for (kind, op) in reference_builtins() {
        let linear = matches!(kind, BuiltinKind::A1);
        ctx.check(&format!("additivity[{kind:?}]"), n, EXACT_TOL, |r| {
            let (x, y) = (Element::from(rf(r)), Element::from(rf(r)));
            let lhs = op.apply(&x.plus(&y)?)?;
            let rhs = op.apply(&x)?.plus(&op.apply(&y)?)?;
            Ok(rel(lhs.distance(&rhs)?, op.norm_bound() * (x.norm() + y.norm())))
        });
        ctx.check(&format!("homogeneity[{kind:?}]"), n, EXACT_TOL, |r| {
            let x = Element::from(rf(r));
            let k = if linear { scalar(r) } else { r.gen_range(0.0..3.0) };
            let lhs = op.apply(&x.scale(k))?;
            let rhs = op.apply(&x)?.scale(k);
            Ok(rel(lhs.distance(&rhs)?, op.norm_bound() * k.abs() * x.norm()))
        });
        ctx.check(&format!("norm_bound[{kind:?}]"), n, EXACT_TOL, |r| {
            let x = Element::from(rf(r));
            Ok(rel((op.apply(&x)?.norm() - op.norm_bound() * x.norm()).max(0.0), op.norm_bound() * x.norm()))
        });
        let probes = canonical_probe_elements(1);
        let zero = zero_operator();
        let mut worst = 0.0f64;
        let mut note = None;
        for i in 1..=5u32 {
            match phi_distance(power(op.clone(), i).as_ref(), zero.as_ref(), &probes) {
                Ok(phi) => worst = worst.max(rel((phi - op.norm_bound().powi(i as i32)).max(0.0), phi)),
                Err(e) => {
                    worst = f64::INFINITY;
                    note = Some(e.to_string());
                }
            }
        }
        ctx.push(&format!("submultiplicative_powers[{kind:?}]"), 5, worst, EXACT_TOL, worst <= EXACT_TOL, note);
    }
    let p5 = lift_matrix(vec![vec![1.0, 1.0], vec![-1.0, -1.0]]).expect("square");
    ctx.check("fuzziness_residual_identity", n, EXACT_TOL, |r| {
        let (u, v) = (rf(r), rf(r));
        let e = closed_form::fuzziness_residual(&u, &v);
        let sq = power(p5.clone(), 2).apply(&Element::pair(u.clone(), v.clone()))?;
        let want = Element::pair(e.clone(), e.clone());
        Ok(rel(sq.distance(&want)?.max(e.scale(-1.0).distance(&e)), u.norm() + v.norm()))
    });
}

/// Generator-bound table plus all semigroup properties.
fn semigroup_suite(ctx: &mut Ctx) -> Vec<GeneratorRow> {
    let probes = canonical_probe_elements(1);
    let builtins = reference_builtins();
    let count = probes.len();

    for (kind, op) in &builtins {
        let ev = SemigroupEvaluator::exp(op.clone(), SERIES_TOL).expect("finite bound");
        let mut it = probes.iter().cycle();
        ctx.check(&format!("truncation_soundness[{kind:?}]"), count * 3, SERIES_TOL, |_| {
            let x = it.next().expect("cycle");
            let mut worst = 0.0f64;
            for t in [0.5, 1.0, 2.0] {
                let m = ev.order_for(t, x)?;
                worst = worst.max(ev.partial_sum(t, x, m)?.distance(&ev.partial_sum(t, x, m + 10)?)?);
            }
            Ok(worst)
        });
        let mut it = probes.iter();
        ctx.check(&format!("identity_at_zero[{kind:?}]"), count, 0.0, |_| {
            let x = it.next().expect("one per probe");
            Ok(if &ev.exp_apply(0.0, x)? == x { 0.0 } else { 1.0 })
        });
        let mut it = probes.iter();
        ctx.check(&format!("semigroup_law[{kind:?}]"), count, 1e-8, |_| {
            let x = it.next().expect("one per probe");
            let mut worst = 0.0f64;
            for &t in &LAW_TIMES {
                for &s in &LAW_TIMES {
                    worst = worst.max(ev.check_semigroup_law(t, s, x)?);
                }
            }
            Ok(worst)
        });
        if let Some(c) = matches!(kind, BuiltinKind::A2 | BuiltinKind::A3 | BuiltinKind::RemarkA | BuiltinKind::RemarkB)
            .then(|| tri(0.0, 1.0, 2.0))
        {
            let mut it = probes.iter();
            ctx.check(&format!("closed_form[{kind:?}]"), count, 1e-8, |_| {
                let x = it.next().expect("one per probe");
                let mut worst = 0.0f64;
                for i in 0..=8 {
                    let t = 0.25 * i as f64;
                    let want = closed_form::rank_one(*kind, &c, x.as_number().expect("number probe"), t)?;
                    worst = worst.max(ev.exp_apply(t, x)?.distance(&want.into())?);
                }
                Ok(worst)
            });
        }
    }

    // generator bound: the series error enters divided by h, so use a much
    // tighter series tolerance here
    let mut table = Vec::new();
    for (kind, op) in &builtins {
        let ev = SemigroupEvaluator::exp(op.clone(), 1e-14).expect("finite bound");
        let mut worst_excess = 0.0f64;
        let mut monotone_violation = 0.0f64;
        let mut note = None;
        let mut rows: Vec<GeneratorRow> = GENERATOR_STEPS
            .iter()
            .map(|&h| GeneratorRow { operator: format!("{kind:?}"), h, max_residual: 0.0, bound: 0.0 })
            .collect();
        for x in &probes {
            let mut prev = f64::INFINITY;
            for (row, &h) in rows.iter_mut().zip(&GENERATOR_STEPS) {
                let bound = generator_bound(h, op.norm_bound(), x.norm());
                match ev.generator_residual(h, x) {
                    Ok(res) => {
                        worst_excess = worst_excess.max(res - bound);
                        monotone_violation = monotone_violation.max(res - prev - 1e-12);
                        prev = res;
                        row.max_residual = row.max_residual.max(res);
                        row.bound = row.bound.max(bound);
                    }
                    Err(e) => {
                        worst_excess = f64::INFINITY;
                        note.get_or_insert_with(|| e.to_string());
                    }
                }
            }
        }
        ctx.push(
            &format!("generator_bound[{kind:?}]"),
            count * GENERATOR_STEPS.len(),
            worst_excess.max(0.0),
            1e-6,
            worst_excess <= 1e-6,
            note,
        );
        ctx.push(
            &format!("generator_residual_monotone[{kind:?}]"),
            count * GENERATOR_STEPS.len(),
            monotone_violation.max(0.0),
            0.0,
            monotone_violation <= 0.0,
            None,
        );
        table.extend(rows);
    }

    // T'' = A[T] with T = cosh(t⊙A), on operators with bound <= 1
    let small_c = tri(0.0, 0.25, 0.5);
    let small: Vec<(String, Operator)> = vec![
        ("A4".into(), builtin(BuiltinKind::A4, None).expect("no constant")),
        ("A5".into(), builtin(BuiltinKind::A5, None).expect("no constant")),
        ("RemarkA(c/4)".into(), builtin(BuiltinKind::RemarkA, Some(small_c.clone())).expect("mu > 0")),
        ("A2(c/4)".into(), builtin(BuiltinKind::A2, Some(small_c)).expect("has c")),
    ];
    for (name, op) in small {
        let ev = SemigroupEvaluator::cosh(op, 1e-13).expect("finite bound");
        let mut it = probes.iter();
        ctx.check(&format!("second_derivative[{name}]"), count, 0.0, |_| {
            let x = it.next().expect("one per probe");
            let mut excess = f64::NEG_INFINITY;
            for t in [0.0, 0.5, 1.0] {
                for h in [1e-2, 1e-3] {
                    let r = ev.second_derivative_residual(t, h, x)?;
                    excess = excess.max(r - ev.second_derivative_bound(t, h, x));
                }
            }
            Ok(excess.max(0.0))
        });
    }

    let mut worst = 0.0f64;
    for (t, m_bound, tol) in [(1.0, 1.0, 1e-10), (0.5, 4.0, 1e-9), (2.0, 2.0, 1e-12)] {
        let m = required_order(t, m_bound, tol, SeriesKind::Exp).unwrap_or(usize::MAX);
        let z: f64 = t * m_bound;
        let mut term = 1.0f64;
        let mut tail = 0.0;
        for i in 1..300 {
            term *= z / i as f64;
            if i > m {
                tail += term;
            }
        }
        worst = worst.max(tail - tol);
    }
    ctx.push("required_order_tail", 3, worst.max(0.0), 0.0, worst <= 0.0, None);
    table
}

fn random_tri(rng: &mut ChaCha8Rng) -> FuzzyNumber {
    let c = scalar(rng);
    tri(c - rng.gen_range(0.0..1.0), c, c + rng.gen_range(0.0..1.0))
}

/// Fixed-step RK4 on `y' = a y` (or `y'' = a y` written first-order) for
/// the crisp collapse check.
fn rk4(f: impl Fn(&[f64]) -> Vec<f64>, y0: &[f64], t: f64, steps: usize) -> Vec<f64> {
    let dt = t / steps as f64;
    let mut y = y0.to_vec();
    let axpy = |y: &[f64], k: &[f64], a: f64| y.iter().zip(k).map(|(y, k)| y + a * k).collect::<Vec<_>>();
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&axpy(&y, &k1, dt / 2.0));
        let k3 = f(&axpy(&y, &k2, dt / 2.0));
        let k4 = f(&axpy(&y, &k3, dt));
        for i in 0..y.len() {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

fn solver_suite(ctx: &mut Ctx) {
    let n = (ctx.cases / 20).max(10);
    let tol = 1e-9;
    let p4 = lift_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).expect("square");
    let p5 = lift_matrix(vec![vec![1.0, 1.0], vec![-1.0, -1.0]]).expect("square");
    let times = [0.0, 0.25, 0.5, 1.0];

    ctx.check("trajectory_validity", n, EXACT_TOL, |r| {
        let w0 = Element::pair(rf(r), rf(r));
        let mut worst = 0.0f64;
        for op in [&p4, &p5] {
            let first = CauchyProblem::first_order(op.clone(), w0.clone(), Forcing::Zero, 1.0, tol)?;
            let second = CauchyProblem::second_order(op.clone(), w0.clone(), 1.0, tol)?;
            for &t in &times {
                worst = worst.max(solve_first_order_at(&first, t)?.invariant_violation());
                worst = worst.max(solve_second_order_at(&second, t)?.invariant_violation());
            }
        }
        Ok(worst)
    });
    ctx.check("crisp_collapse_rk4", n, 1e-6, |r| {
        let (a, b) = (scalar(r), scalar(r));
        let w0 = Element::pair(FuzzyNumber::crisp(a), FuzzyNumber::crisp(b));
        let pr4 = CauchyProblem::first_order(p4.clone(), w0.clone(), Forcing::Zero, 1.0, tol)?;
        let pr5 = CauchyProblem::first_order(p5.clone(), w0.clone(), Forcing::Zero, 1.0, tol)?;
        let pr6 = CauchyProblem::second_order(p5.clone(), w0.clone(), 1.0, tol)?;
        let crisp = |e: &Element| -> Vec<f64> { e.numbers().iter().map(|u| u.lower()[0]).collect() };
        let mut worst = 0.0f64;
        for &t in &times[1..] {
            let o4 = rk4(|y| vec![y[1], y[0]], &[a, b], t, 200);
            let o5 = rk4(|y| vec![y[0] + y[1], -(y[0] + y[1])], &[a, b], t, 200);
            // second order as (u, v, u', v')
            let o6 = rk4(|y| vec![y[2], y[3], y[0] + y[1], -(y[0] + y[1])], &[a, b, 0.0, 0.0], t, 200);
            let pairs = [
                (crisp(&solve_first_order_at(&pr4, t)?), o4, closed_form::problem4_crisp(a, b, t)),
                (crisp(&solve_first_order_at(&pr5, t)?), o5, closed_form::problem5_crisp(a, b, t)),
                (crisp(&solve_second_order_at(&pr6, t)?), o6[..2].to_vec(), closed_form::problem6_crisp(a, b, t)),
            ];
            for (got, oracle, exact) in pairs {
                for i in 0..2 {
                    let e = if i == 0 { exact.0 } else { exact.1 };
                    worst = worst.max((got[i] - oracle[i]).abs()).max((got[i] - e).abs());
                }
            }
        }
        Ok(worst)
    });
    ctx.check("fuzziness_residual_zero_iff_crisp", ctx.cases, 0.0, |r| {
        let (a, b) = (scalar(r), scalar(r));
        let crisp_e = closed_form::fuzziness_residual(&FuzzyNumber::crisp(a), &FuzzyNumber::crisp(b));
        let (u, v) = (rf(r), rf(r));
        let fuzzy_e = closed_form::fuzziness_residual(&u, &v);
        let sum_crisp = u.plus(&v).is_crisp();
        let mismatch = (fuzzy_e.norm() == 0.0) != sum_crisp;
        Ok(crisp_e.norm() + if mismatch { 1.0 } else { 0.0 })
    });
    ctx.check("problem4_closed_form", n, 1e-8, |r| {
        let (u0, v0) = (random_tri(r), random_tri(r));
        let p = CauchyProblem::first_order(p4.clone(), Element::pair(u0.clone(), v0.clone()), Forcing::Zero, 2.0, tol)?;
        let mut worst = 0.0f64;
        for i in 0..=8 {
            let t = 0.25 * i as f64;
            let scale = (u0.norm() + v0.norm()) * t.cosh();
            worst = worst.max(rel(solve_first_order_at(&p, t)?.distance(&closed_form::problem4(&u0, &v0, t))?, scale));
        }
        Ok(worst)
    });
    ctx.check("quadrature_affine_exact", n, EXACT_TOL, |r| {
        let (u, w) = (Element::from(rf(r)), Element::from(rf(r)));
        let t = r.gen_range(0.1..2.0);
        let f = |s: f64| u.scale(s).plus(&w);
        let exact = u.scale(t * t / 2.0).plus(&w.scale(t))?;
        let mut worst = 0.0f64;
        for panels in 1..=8 {
            let got = integrate_fuzzy(&f, 0.0, t, panels)?;
            worst = worst.max(rel(got.distance(&exact)?, t * (u.norm() + w.norm())));
        }
        Ok(worst)
    });

    // the crisp-style formula for the coupled system is not a solution when
    // the data are fuzzy; the series solution is
    let (u0, v0) = (tri(0.0, 1.0, 2.0), tri(1.0, 2.0, 3.0));
    let e_norm = closed_form::fuzziness_residual(&u0, &v0).norm();
    let naive = |t: f64| Ok(closed_form::problem5_naive(&u0, &v0, t));
    let mut naive_min = f64::INFINITY;
    for h in [1e-2, 1e-3, 1e-4] {
        match residual_check(&naive, p5.as_ref(), &Forcing::Zero, &[1.0], h, DifferenceScheme::Symmetric) {
            Ok(r) => naive_min = naive_min.min(r),
            Err(_) => naive_min = f64::NEG_INFINITY,
        }
    }
    ctx.push(
        "naive_formula_rejected",
        3,
        (0.5 * e_norm - naive_min).max(0.0),
        0.0,
        naive_min >= 0.5 * e_norm,
        Some(format!("smallest naive residual {naive_min} vs 0.5 ||E|| = {}", 0.5 * e_norm)),
    );
    let problem =
        CauchyProblem::first_order(p5.clone(), Element::pair(u0.clone(), v0.clone()), Forcing::Zero, 1.0, 1e-12)
            .expect("valid problem");
    let series = |t: f64| solve_first_order_at(&problem, t);
    let true_res = residual_check(&series, p5.as_ref(), &Forcing::Zero, &[1.0], 1e-3, DifferenceScheme::Symmetric);
    let (v, note) = match true_res {
        Ok(v) => (v, None),
        Err(e) => (f64::INFINITY, Some(e.to_string())),
    };
    ctx.push("true_solution_residual", 1, v, 1e-2, v <= 1e-2, note);
}
