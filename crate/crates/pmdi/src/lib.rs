//! Exact solver for proportionally modular Diophantine inequalities.
//!
//! An inequality `(a*x mod b) <= c*x` with factor `a`, modulus `b` and
//! rational proportion `c` has a least positive solution `L(a, b, c)`.
//! This crate computes it by a Euclidean-style recursion with logarithmic
//! depth, records a full per-level trace, and ships brute-force oracles
//! for differential testing. On top of the solver sit two applications:
//! the multiplicity of quotient numerical semigroups `<a1, a2> / d` and
//! Frobenius numbers `F(a, b, 1)`.
//!
//! All arithmetic is exact. The core is generic over the integer scalar
//! (anything satisfying [`SolverInt`]); the crate-root aliases fix it to
//! arbitrary precision, which every computation path can rely on since
//! the derived proportions grow multiplicatively with the modulus.

use std::fmt;

use num::{FromPrimitive, Integer, Signed};

pub mod rational;
pub mod semigroup;
pub mod solver;

pub use rational::{ceil_div, floor_div, make_rational, parse_rational, rem};
pub use semigroup::{
    frobenius_f1, frobenius_naive, interval_multiplicity, interval_multiplicity_naive,
    mod_inverse, quotient_multiplicity, quotient_multiplicity_naive, QuotientQuery,
    RationalInterval, TwoGenSemigroup,
};
pub use solver::{
    euclidean_chain_length, solve, solve_naive, verify_trace, Branch, PmdInstance, SolveResult,
    TraceLevel, Violation,
};

/// Integer scalar the whole crate is generic over.
///
/// Implemented for `i64`/`i128` (fast, bounded) and `num::BigInt`
/// (unbounded, the default of the crate-root aliases).
pub trait SolverInt:
    Integer + Signed + FromPrimitive + Clone + fmt::Debug + fmt::Display
{
}

impl<T> SolverInt for T where
    T: Integer + Signed + FromPrimitive + Clone + fmt::Debug + fmt::Display
{
}

/// Default unbounded integer scalar.
pub type Int = num::BigInt;
/// Exact rational over the default scalar.
pub type Rational = num::rational::Ratio<Int>;
/// Inequality instance over the default scalar.
pub type Instance = PmdInstance<Int>;

/// Errors raised by constructors and operations; every variant maps to an
/// invalid argument or an unsatisfiable precondition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("divisor must be positive")]
    NonPositiveDivisor,
    #[error("modulus must be positive")]
    NonPositiveModulus,
    #[error("proportion must be positive")]
    NonPositiveProportion,
    #[error("factor must be non-negative")]
    NegativeFactor,
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("no modular inverse: arguments are not coprime")]
    NotInvertible,
    #[error("generators must be coprime")]
    NotCoprime,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("interval endpoints must satisfy 0 < p < q")]
    InvalidInterval,
    #[error("frobenius requires 2 <= a < b")]
    FrobeniusRange,
}
