//! Exact solutions of the worked examples, used as oracles for the series
//! solvers.

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;
use crate::operators::{lower_defect, upper_defect, Builtin, BuiltinKind};
use crate::semigroup::exp_remainder2;
use crate::spaces::Element;

/// `E(u, v) = (u ⊕ v) ⊕ (-1) ⊙ (u ⊕ v)`; zero exactly when `u ⊕ v` is crisp.
pub fn fuzziness_residual(u: &FuzzyNumber, v: &FuzzyNumber) -> FuzzyNumber {
    let s = u.plus(v);
    s.plus(&s.scale(-1.0))
}

/// `(cosh t ⊙ u0 ⊕ sinh t ⊙ v0, sinh t ⊙ u0 ⊕ cosh t ⊙ v0)` for the
/// swap system `u' = v`, `v' = u`.
pub fn problem4(u0: &FuzzyNumber, v0: &FuzzyNumber, t: f64) -> Element {
    let (c, s) = (t.cosh(), t.sinh());
    Element::pair(u0.scale(c).plus(&v0.scale(s)), u0.scale(s).plus(&v0.scale(c)))
}

/// `¼ (e^{2t} - 2t - 1)`.
pub fn h5(t: f64) -> f64 {
    exp_remainder2(2.0 * t) / 4.0
}

/// `¼ (cosh(t√2) - t² - 1)`, summed as `¼ Σ_{p>=2} (2t²)^p / (2p)!` when
/// small to avoid cancellation.
pub fn h6(t: f64) -> f64 {
    let y2 = 2.0 * t * t;
    if y2 > 1.0 {
        return ((2f64.sqrt() * t).cosh() - t * t - 1.0) / 4.0;
    }
    let mut term = y2 * y2 / 24.0;
    let mut sum = 0.0f64;
    let mut p = 2.0;
    while term > 1e-18 * sum || sum == 0.0 && term > 0.0 {
        sum += term;
        term *= y2 / ((2.0 * p + 1.0) * (2.0 * p + 2.0));
        p += 1.0;
    }
    sum / 4.0
}

/// `u0 ⊕ k ⊙ s ⊕ h ⊙ E`, `v0 ⊕ (-k) ⊙ s ⊕ h ⊙ E` with `s = u0 ⊕ v0`.
fn coupled(u0: &FuzzyNumber, v0: &FuzzyNumber, k: f64, h: f64) -> Element {
    let s = u0.plus(v0);
    let e = fuzziness_residual(u0, v0).scale(h);
    Element::pair(u0.plus(&s.scale(k)).plus(&e), v0.plus(&s.scale(-k)).plus(&e))
}

/// Solution of `u' = u ⊕ v`, `v' = (-1) ⊙ (u ⊕ v)`.
pub fn problem5(u0: &FuzzyNumber, v0: &FuzzyNumber, t: f64) -> Element {
    coupled(u0, v0, t, h5(t))
}

/// The crisp-style formula `u0 ⊕ t ⊙ (u0 ⊕ v0)`, `v0 ⊕ (-t) ⊙ (u0 ⊕ v0)`:
/// a solution only when `E(u0, v0) = 0`.
pub fn problem5_naive(u0: &FuzzyNumber, v0: &FuzzyNumber, t: f64) -> Element {
    coupled(u0, v0, t, 0.0)
}

/// Solution of `u'' = u ⊕ v`, `v'' = (-1) ⊙ (u ⊕ v)` with zero initial
/// velocity.
pub fn problem6(u0: &FuzzyNumber, v0: &FuzzyNumber, t: f64) -> Element {
    coupled(u0, v0, t * t / 2.0, h6(t))
}

pub fn problem6_naive(u0: &FuzzyNumber, v0: &FuzzyNumber, t: f64) -> Element {
    coupled(u0, v0, t * t / 2.0, 0.0)
}

/// Real-valued solutions `(u, v)` of the three systems.
pub fn problem4_crisp(u0: f64, v0: f64, t: f64) -> (f64, f64) {
    (u0 * t.cosh() + v0 * t.sinh(), u0 * t.sinh() + v0 * t.cosh())
}

pub fn problem5_crisp(u0: f64, v0: f64, t: f64) -> (f64, f64) {
    (u0 + t * (u0 + v0), v0 - t * (u0 + v0))
}

pub fn problem6_crisp(u0: f64, v0: f64, t: f64) -> (f64, f64) {
    let k = t * t / 2.0;
    (u0 + k * (u0 + v0), v0 - k * (u0 + v0))
}

/// `e^{t⊙A}(x)` for the operators `A(x) = κ(x) ⊙ c` (`A2`, `A3` and the
/// two remark operators), `t >= 0`:
///
/// `x ⊕ (κ(x)/ρ)(e^{tρ} - 1) ⊙ c` with `ρ = κ(c)`, where `κ` is the
/// operator's lower or upper defect. For `ρ = 0` the factor is `t κ(x)`.
pub fn rank_one(kind: BuiltinKind, c: &FuzzyNumber, x: &FuzzyNumber, t: f64) -> Result<FuzzyNumber> {
    let op = Builtin::new(kind, Some(c.clone()))?;
    let defect = match kind {
        BuiltinKind::A3 | BuiltinKind::RemarkA => lower_defect,
        BuiltinKind::A2 | BuiltinKind::RemarkB => upper_defect,
        _ => return Err(Error::InvalidParameter(format!("{kind:?} has no rank-one closed form"))),
    };
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("closed form holds for t >= 0, got {t}")));
    }
    let rho = op.growth_rate().expect("coefficient operators carry c");
    let k = defect(x);
    let factor = if rho == 0.0 { t * k } else { k * (t * rho).exp_m1() / rho };
    Ok(x.plus(&c.scale(factor)))
}

/// `cosh(t) e^x ⊙ c`: the wave solution for `u1 = e^x ⊙ c`, `u2 = 0`.
pub fn wave_exp(c: &FuzzyNumber, t: f64, x: f64) -> FuzzyNumber {
    c.scale(t.cosh() * x.exp())
}
