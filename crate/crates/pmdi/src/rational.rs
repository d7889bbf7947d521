//! Exact rational construction and integer floor/ceiling division.
//!
//! Rationals are `num::rational::Ratio` values: reduced at construction,
//! denominator always positive, ordering by exact cross-multiplication.
//! Nothing in this crate ever converts to floating point.

use num::rational::Ratio;
use num::Num;

use crate::{Error, SolverInt};

/// Builds the reduced, positive-denominator representative of `num / den`.
pub fn make_rational<T: SolverInt>(num: T, den: T) -> Result<Ratio<T>, Error> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Ratio::new(num, den))
}

/// Parses the textual syntax used everywhere in this repo: `"n"` or `"n/d"`.
pub fn parse_rational<T: SolverInt>(text: &str) -> Result<Ratio<T>, Error> {
    let bad = || Error::ParseRational(text.to_string());
    let text = text.trim();
    if text.is_empty() {
        return Err(bad());
    }
    match text.split_once('/') {
        None => {
            let n = <T as Num>::from_str_radix(text, 10).map_err(|_| bad())?;
            Ok(Ratio::from_integer(n))
        }
        Some((num, den)) => {
            let n = <T as Num>::from_str_radix(num.trim(), 10).map_err(|_| bad())?;
            let d = <T as Num>::from_str_radix(den.trim(), 10).map_err(|_| bad())?;
            make_rational(n, d)
        }
    }
}

/// Largest integer `<= p / q`. Requires `q > 0`.
pub fn floor_div<T: SolverInt>(p: &T, q: &T) -> Result<T, Error> {
    if !q.is_positive() {
        return Err(Error::NonPositiveDivisor);
    }
    Ok(p.div_floor(q))
}

/// Smallest integer `>= p / q`. Requires `q > 0`.
pub fn ceil_div<T: SolverInt>(p: &T, q: &T) -> Result<T, Error> {
    if !q.is_positive() {
        return Err(Error::NonPositiveDivisor);
    }
    Ok(p.div_ceil(q))
}

/// Remainder operator: the unique `r` with `0 <= r < n` and `r ≡ m (mod n)`.
///
/// Defined for negative `m` as well, so `rem(-b, a)` is the least
/// non-negative residue of `-b`.
pub fn rem<T: SolverInt>(m: &T, n: &T) -> Result<T, Error> {
    if !n.is_positive() {
        return Err(Error::NonPositiveDivisor);
    }
    Ok(m.mod_floor(n))
}
