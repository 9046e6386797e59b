use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("triangular endpoints out of order: expected {left} <= {center} <= {right}")]
    OrderViolation { left: f64, center: f64, right: f64 },

    #[error("invalid fuzzy number: {0}")]
    InvalidNumber(String),

    #[error("Hukuhara difference does not exist (violation {violation:e} at level index {level})")]
    NotExists { level: usize, violation: f64 },

    #[error("domain mismatch: [{a1}, {b1}] vs [{a2}, {b2}]")]
    DomainMismatch { a1: f64, b1: f64, a2: f64, b2: f64 },

    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("probe {index} has norm {norm} > 1")]
    ProbeNormViolation { index: usize, norm: f64 },

    #[error("operator {name} requires mu > 0, got {mu}")]
    MuNotPositive { name: &'static str, mu: f64 },

    #[error("operator {0} requires a constant fuzzy number c")]
    MissingConstant(&'static str),

    #[error("semigroup law is only asserted for same-sign times, got t={t}, s={s}")]
    MixedSigns { t: f64, s: f64 },

    #[error("H-difference T(h)x - x failed at h={h}: {reason}")]
    HDiffFailed { h: f64, reason: String },

    #[error("quadrature did not converge within {doublings} doublings at t={t} (last change {change:e})")]
    QuadratureStall { t: f64, doublings: u32, change: f64 },

    #[error("nonzero initial velocity is only supported in wave form")]
    UnsupportedVelocity,

    #[error("wave solve requires a finite certified bound on the even derivatives")]
    MissingDerivativeBound,

    #[error("no generalized difference form applies at t={t}")]
    NoApplicableForm { t: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
