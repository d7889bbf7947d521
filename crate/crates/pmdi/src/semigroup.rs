//! Numerical semigroup applications of the solver: multiplicity of
//! quotients of two-generator semigroups, multiplicity of semigroups of
//! rational intervals, and Frobenius numbers F(a, b, 1). Each formula
//! path is paired with a brute-force oracle over the defining sets.

use num::rational::Ratio;
use num::Signed;

use crate::solver::{solve, PmdInstance};
use crate::{Error, SolverInt};

/// The unique `u` with `1 <= u <= m` and `x * u ≡ 1 (mod m)`.
/// For `m = 1` the answer is `u = 1` by convention.
pub fn mod_inverse<T: SolverInt>(x: &T, m: &T) -> Result<T, Error> {
    if !x.is_positive() || !m.is_positive() {
        return Err(Error::NonPositiveGenerator);
    }
    let ext = x.extended_gcd(m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible);
    }
    let u = ext.x.mod_floor(m);
    // mod_floor lands in [0, m); shift the 0 representative (m = 1) to m.
    Ok(if u.is_zero() { m.clone() } else { u })
}

/// Numerical semigroup generated by two coprime positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoGenSemigroup<T: SolverInt> {
    gen1: T,
    gen2: T,
}

impl<T: SolverInt> TwoGenSemigroup<T> {
    pub fn new(gen1: T, gen2: T) -> Result<Self, Error> {
        if !gen1.is_positive() || !gen2.is_positive() {
            return Err(Error::NonPositiveGenerator);
        }
        if !gen1.gcd(&gen2).is_one() {
            return Err(Error::NotCoprime);
        }
        Ok(TwoGenSemigroup { gen1, gen2 })
    }

    pub fn gen1(&self) -> &T {
        &self.gen1
    }

    pub fn gen2(&self) -> &T {
        &self.gen2
    }

    /// True iff `x = l1 * gen1 + l2 * gen2` for some l1, l2 >= 0.
    /// Plain scan over l1; oracle support, not meant to be fast.
    pub fn contains(&self, x: &T) -> bool {
        if x.is_negative() {
            return false;
        }
        let mut rest = x.clone();
        while !rest.is_negative() {
            if rest.mod_floor(&self.gen2).is_zero() {
                return true;
            }
            rest = rest - self.gen1.clone();
        }
        false
    }
}

/// A quotient `S / d = { x | x * d in S }` of a two-generator semigroup,
/// with the modular inverse `u` of `gen2` mod `gen1` cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientQuery<T: SolverInt> {
    pub sg: TwoGenSemigroup<T>,
    pub divisor: T,
    /// `u * gen2 ≡ 1 (mod gen1)`, `1 <= u <= gen1`.
    pub inverse: T,
}

impl<T: SolverInt> QuotientQuery<T> {
    pub fn new(sg: TwoGenSemigroup<T>, divisor: T) -> Result<Self, Error> {
        if !divisor.is_positive() {
            return Err(Error::NonPositiveDivisor);
        }
        let inverse = mod_inverse(&sg.gen2, &sg.gen1)?;
        Ok(QuotientQuery { sg, divisor, inverse })
    }
}

/// Multiplicity (smallest positive element) of `S / d` via the solver:
/// the quotient is itself the solution set of one inequality.
pub fn quotient_multiplicity<T: SolverInt>(query: &QuotientQuery<T>) -> Result<T, Error> {
    let a1 = query.sg.gen1.clone();
    let a2 = query.sg.gen2.clone();
    let factor = (query.inverse.clone() * query.divisor.clone()).mod_floor(&a1);
    let inst = PmdInstance::new(factor, a1, Ratio::new(query.divisor.clone(), a2))?;
    Ok(solve(&inst)?.value)
}

/// Oracle: scan x = 1, 2, ... for the first multiple of `d` in the
/// semigroup. Terminates since every integer past gen1*gen2 is a member.
pub fn quotient_multiplicity_naive<T: SolverInt>(query: &QuotientQuery<T>) -> T {
    let mut x = T::one();
    loop {
        if query.sg.contains(&(x.clone() * query.divisor.clone())) {
            return x;
        }
        x = x + T::one();
    }
}

/// Closed interval `[lo, hi]` of positive rationals with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval<T: SolverInt> {
    lo: Ratio<T>,
    hi: Ratio<T>,
}

impl<T: SolverInt> RationalInterval<T> {
    pub fn new(lo: Ratio<T>, hi: Ratio<T>) -> Result<Self, Error> {
        if !lo.is_positive() || !hi.is_positive() || lo >= hi {
            return Err(Error::InvalidInterval);
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn lo(&self) -> &Ratio<T> {
        &self.lo
    }

    pub fn hi(&self) -> &Ratio<T> {
        &self.hi
    }
}

/// Multiplicity of the numerical semigroup of sums drawn from the
/// interval. With lo = b1/a1 and hi = b2/a2 in lowest terms, that
/// semigroup is the solution set of the instance
/// (a1*b2, b1*b2, a1*b2 - a2*b1); the product triple is passed as-is and
/// the solver's own gcd reduction does any simplification.
pub fn interval_multiplicity<T: SolverInt>(iv: &RationalInterval<T>) -> Result<T, Error> {
    let (b1, a1) = (iv.lo.numer().clone(), iv.lo.denom().clone());
    let (b2, a2) = (iv.hi.numer().clone(), iv.hi.denom().clone());
    let factor = a1.clone() * b2.clone();
    let proportion = factor.clone() - a2 * b1.clone();
    let inst = PmdInstance::new(factor, b1 * b2, Ratio::from_integer(proportion))?;
    Ok(solve(&inst)?.value)
}

/// Oracle: n belongs to the interval semigroup iff some integer k >= 1
/// has k*lo <= n <= k*hi, i.e. the window [ceil(n/hi), floor(n/lo)]
/// is non-empty. Scans n = 1, 2, ...
pub fn interval_multiplicity_naive<T: SolverInt>(iv: &RationalInterval<T>) -> T {
    let (b1, a1) = (iv.lo.numer(), iv.lo.denom());
    let (b2, a2) = (iv.hi.numer(), iv.hi.denom());
    let mut n = T::one();
    loop {
        let k_min = (n.clone() * a2.clone()).div_ceil(b2);
        let k_max = (n.clone() * a1.clone()).div_floor(b1);
        if k_min <= k_max && k_min.is_positive() {
            return n;
        }
        n = n + T::one();
    }
}

fn frobenius_interval<T: SolverInt>(a: &T, b: &T) -> Result<RationalInterval<T>, Error> {
    let two = T::from_u8(2).expect("small constant");
    let b_sq2 = two.clone() * b.clone() * b.clone();
    let lo = Ratio::new(b_sq2.clone() + T::one(), two.clone() * a.clone() * b.clone());
    let hi = Ratio::new(b_sq2 - T::one(), two * b.clone() * (a.clone() - T::one()));
    RationalInterval::new(lo, hi)
}

/// Frobenius number of the solution set of `(a*x mod b) <= x`: the
/// largest x with `(a*x mod b) > x`. Requires `2 <= a < b`. Computed as
/// `b` minus the multiplicity of an associated interval semigroup.
pub fn frobenius_f1<T: SolverInt>(a: &T, b: &T) -> Result<T, Error> {
    check_frobenius_range(a, b)?;
    let m = interval_multiplicity(&frobenius_interval(a, b)?)?;
    Ok(b.clone() - m)
}

/// Oracle: scan x = 1..b and keep the largest x with `(a*x mod b) > x`.
pub fn frobenius_naive<T: SolverInt>(a: &T, b: &T) -> Result<T, Error> {
    check_frobenius_range(a, b)?;
    let mut x = T::one();
    let mut residue = a.clone(); // (a * x) mod b
    let mut best = T::zero();
    while x < *b {
        if residue > x {
            best = x.clone();
        }
        x = x + T::one();
        residue = residue + a.clone();
        if residue >= *b {
            residue = residue - b.clone();
        }
    }
    Ok(best)
}

fn check_frobenius_range<T: SolverInt>(a: &T, b: &T) -> Result<(), Error> {
    let two = T::from_u8(2).expect("small constant");
    if *a < two || a >= b {
        return Err(Error::FrobeniusRange);
    }
    Ok(())
}
