//! Fuzzy numbers, fuzzy metric spaces, bounded operators on them and the
//! exponential / hyperbolic operator series used to solve fuzzy Cauchy
//! problems.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cauchy;
pub mod closed_form;
pub mod config;
pub mod error;
pub mod fuzzy;
pub mod operators;
pub mod semigroup;
pub mod spaces;
pub mod verify;

pub use cauchy::{
    integrate_fuzzy, residual_check, solve, solve_first_order, solve_first_order_at, solve_second_order,
    solve_second_order_at, solve_wave, uniform_time_grid, CauchyProblem, DifferenceScheme, Forcing, Trajectory,
};
pub use error::{Error, Result};
pub use fuzzy::{
    ts_partial_diff, uniform_levels, Direction, FuzzyNumber, SymmetricTriangular, Triangular, DEFAULT_LEVEL_COUNT,
    MONOTONE_TOLERANCE,
};
pub use operators::{
    builtin, canonical_probes, compose, identity, lift_matrix, phi_distance, power, scaled, zero_operator, Builtin,
    BuiltinKind, Homogeneity, LinearOperator, MatrixOperator, Operator, OperatorSpec,
};
pub use semigroup::{generator_bound, required_order, SemigroupEvaluator, SeriesKind};
pub use spaces::{
    box_distance, dp_star_distance, lp_distance, sequence_distance, sup_distance, Element, FunctionMetric,
    FuzzyFunction, FuzzySequence, SequenceMetric, DEFAULT_NODE_COUNT,
};
