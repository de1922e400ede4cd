//! Analogy in power p over generalized means.
//!
//! Four positive reals a : b :: c : d are in analogy in power p when the
//! generalized mean of the extremes equals the generalized mean of the
//! means. This crate evaluates generalized means stably, checks analogies,
//! finds the unique power of an ordered quadruple by dichotomic search,
//! solves analogical equations over the reals and the complex plane, and
//! generates power-landscape grids.

// guards written as !(x > 0.0) intentionally reject NaN alongside the
// out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod landscape;
pub mod means;
pub mod ops;
pub mod power;
pub mod quadruple;
pub mod solver;

pub use error::{Error, Result};
pub use landscape::{compute_grid, render_ppm, write_csv, AxisSpec, GridSpec, PGrid};
pub use means::{delta, generalized_mean, generalized_mean_n, PositivePair, TINY_POWER};
pub use ops::{
    arithmetic_residual, boolean_check, check, classify_equality, compose_powers,
    equivalent_forms, negative_normalize, reorderings, residual, scale, to_arithmetic,
    to_reciprocal, to_unit_interval, AnalogyVerdict, BooleanVerdict, EqualityClass,
    DEFAULT_REL_TOL,
};
pub use power::ExtendedPower;
pub use quadruple::{Quadruple, SignMode};
pub use solver::{
    complex_equation_residual, find_p, find_p_fixed, sign_change_scan, solve_complex,
    solve_real, InfiniteSide,
    NoPowerReason, Position, PowerResult, SearchConfig, SolveResult, DEFAULT_P_MAX,
    DEFAULT_TOL_P,
};
