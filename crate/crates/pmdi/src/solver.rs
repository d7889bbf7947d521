//! Least positive solution of `(a*x mod b) <= c*x`.
//!
//! The solver descends along a Euclidean remainder sequence: each level
//! either terminates in one of two closed-form base cases or hands off to
//! a strictly smaller child instance, and the answer is rebuilt on the
//! way back up from the child's least solution. The descent is iterative
//! (explicit stack) so the full trace can be recorded and replayed.

use num::rational::Ratio;
use num::Signed;

use crate::{Error, SolverInt};

/// One inequality `(factor * x mod modulus) <= proportion * x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmdInstance<T: SolverInt> {
    pub factor: T,
    pub modulus: T,
    pub proportion: Ratio<T>,
}

impl<T: SolverInt> PmdInstance<T> {
    pub fn new(factor: T, modulus: T, proportion: Ratio<T>) -> Result<Self, Error> {
        let inst = PmdInstance { factor, modulus, proportion };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !self.modulus.is_positive() {
            return Err(Error::NonPositiveModulus);
        }
        if !self.proportion.is_positive() {
            return Err(Error::NonPositiveProportion);
        }
        if self.factor.is_negative() {
            return Err(Error::NegativeFactor);
        }
        Ok(())
    }

    /// Replaces the factor by its least residue mod the modulus. Idempotent
    /// and solution-set preserving, so callers may pass any factor >= 0.
    pub fn reduce_factor(&self) -> Self {
        PmdInstance {
            factor: self.factor.mod_floor(&self.modulus),
            modulus: self.modulus.clone(),
            proportion: self.proportion.clone(),
        }
    }

    /// Divides factor, modulus and proportion by gcd(factor, modulus).
    /// Leaves the least solution unchanged; requires factor >= 1.
    pub fn reduce_gcd(&self) -> Self {
        if self.factor.is_zero() {
            return self.clone();
        }
        let g = self.factor.gcd(&self.modulus);
        if g.is_one() {
            return self.clone();
        }
        PmdInstance {
            factor: self.factor.div_floor(&g),
            modulus: self.modulus.div_floor(&g),
            proportion: self.proportion.clone() / Ratio::from_integer(g),
        }
    }
}

/// How a recursion level was resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `factor = 0` or `proportion >= factor`: the least solution is 1.
    ProportionDominates,
    /// `factor | modulus`: the least solution is `modulus / factor`.
    FactorDivides,
    /// Strict descent to a smaller child instance.
    Recurse,
}

/// One level of the recursion, as dispatched (after factor and gcd
/// normalization).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLevel<T: SolverInt> {
    pub depth: usize,
    pub factor: T,
    pub modulus: T,
    pub proportion: Ratio<T>,
    pub branch: Branch,
    /// Least solution of this level's instance.
    pub value: T,
    /// Ceiling multiplier used to rebuild `value`; recursive levels only.
    pub mu: Option<T>,
    /// Least solution of the child instance; recursive levels only.
    pub child_value: Option<T>,
}

/// The least solution plus the full recursion record, depth 0 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<T: SolverInt> {
    pub value: T,
    pub trace: Vec<TraceLevel<T>>,
}

/// Computes the least positive `x` with `(factor * x mod modulus) <=
/// proportion * x`, recording every recursion level.
pub fn solve<T: SolverInt>(inst: &PmdInstance<T>) -> Result<SolveResult<T>, Error> {
    inst.validate()?;
    let mut cur = inst.reduce_factor();
    let mut pending: Vec<PmdInstance<T>> = Vec::new();

    // Descend until a base case, stacking the recursive levels.
    let base = loop {
        cur = cur.reduce_gcd();
        let a = cur.factor.clone();
        let b = cur.modulus.clone();
        let c = cur.proportion.clone();

        if a.is_zero() || c >= Ratio::from_integer(a.clone()) {
            break TraceLevel {
                depth: pending.len(),
                factor: a,
                modulus: b,
                proportion: c,
                branch: Branch::ProportionDominates,
                value: T::one(),
                mu: None,
                child_value: None,
            };
        }
        let remainder = b.mod_floor(&a);
        if remainder.is_zero() {
            let value = b.div_floor(&a);
            break TraceLevel {
                depth: pending.len(),
                factor: a,
                modulus: b,
                proportion: c,
                branch: Branch::FactorDivides,
                value,
                mu: None,
                child_value: None,
            };
        }

        // Child instance: factor and modulus step down the Euclidean
        // remainder sequence; the proportion is built in closed integer
        // form n*b / (n*floor(b/a) + d*[b]_a) to stay exact.
        let quot = b.div_floor(&a);
        let n = c.numer().clone();
        let d = c.denom().clone();
        let child = PmdInstance {
            factor: a.mod_floor(&remainder),
            proportion: Ratio::new(n.clone() * b, n * quot + d * remainder.clone()),
            modulus: remainder,
        };
        pending.push(cur);
        cur = child;
    };

    // Unwind: value = ceil(mu * b / a) with
    // mu = ceil(child_value * (a - c) / (c * floor(b/a) + [b]_a)).
    let mut levels = vec![base];
    while let Some(level) = pending.pop() {
        let child_value = levels.last().expect("non-empty").value.clone();
        let a = level.factor.clone();
        let b = level.modulus.clone();
        let remainder = b.mod_floor(&a);
        let quot = b.div_floor(&a);
        let n = level.proportion.numer().clone();
        let d = level.proportion.denom().clone();
        let denom = n.clone() * quot + d.clone() * remainder;
        let mu = (child_value.clone() * (a.clone() * d - n)).div_ceil(&denom);
        let value = (mu.clone() * b).div_ceil(&a);
        levels.push(TraceLevel {
            depth: pending.len(),
            factor: level.factor,
            modulus: level.modulus,
            proportion: level.proportion,
            branch: Branch::Recurse,
            value,
            mu: Some(mu),
            child_value: Some(child_value),
        });
    }
    levels.reverse();
    Ok(SolveResult {
        value: levels[0].value.clone(),
        trace: levels,
    })
}

/// Brute-force oracle: scans x = 1, 2, 3, ... for the first solution.
/// Terminates by x = modulus since `factor * modulus ≡ 0`.
pub fn solve_naive<T: SolverInt>(inst: &PmdInstance<T>) -> Result<T, Error> {
    inst.validate()?;
    let inst = inst.reduce_factor();
    let a = &inst.factor;
    let b = &inst.modulus;
    let n = inst.proportion.numer();
    let d = inst.proportion.denom();

    let mut x = T::one();
    let mut residue = a.clone(); // (a * x) mod b, maintained incrementally
    let mut rhs = n.clone(); // n * x
    loop {
        if residue.clone() * d.clone() <= rhs {
            return Ok(x);
        }
        x = x + T::one();
        residue = residue + a.clone();
        if residue >= *b {
            residue = residue - b.clone();
        }
        rhs = rhs + n.clone();
    }
}

/// A failed consistency check on one trace level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub depth: usize,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "level {}: {}", self.depth, self.message)
    }
}

/// Replays every identity the recursion relies on against the recorded
/// trace. An empty list means the trace is internally consistent.
pub fn verify_trace<T: SolverInt>(result: &SolveResult<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut fail = |depth: usize, message: String| out.push(Violation { depth, message });

    if result.trace.is_empty() {
        fail(0, "trace is empty".into());
        return out;
    }
    if result.value != result.trace[0].value {
        fail(0, "result value disagrees with the top trace level".into());
    }
    if result.trace.last().map(|l| l.branch) == Some(Branch::Recurse) {
        fail(
            result.trace.len() - 1,
            "last trace level is not a base case".into(),
        );
    }

    for (i, level) in result.trace.iter().enumerate() {
        let a = &level.factor;
        let b = &level.modulus;
        let c = &level.proportion;
        match level.branch {
            Branch::ProportionDominates => {
                if !level.value.is_one() {
                    fail(i, "base case must have value 1".into());
                }
                if !a.is_zero() && *c < Ratio::from_integer(a.clone()) {
                    fail(i, "proportion does not dominate the factor".into());
                }
            }
            Branch::FactorDivides => {
                if a.is_zero() || !b.mod_floor(a).is_zero() {
                    fail(i, "factor does not divide the modulus".into());
                } else if level.value != b.div_floor(a) {
                    fail(i, "value is not modulus / factor".into());
                }
            }
            Branch::Recurse => {
                let (Some(mu), Some(child)) = (&level.mu, &level.child_value) else {
                    fail(i, "recursive level is missing mu or child value".into());
                    continue;
                };
                match result.trace.get(i + 1) {
                    None => fail(i, "recursive level has no child level".into()),
                    Some(next) => {
                        if next.value != *child {
                            fail(i, "recorded child value disagrees with child level".into());
                        }
                    }
                }
                if a.is_zero() || *c >= Ratio::from_integer(a.clone()) {
                    fail(i, "recursive level should have been a base case".into());
                    continue;
                }
                let remainder = b.mod_floor(a);
                if remainder.is_zero() {
                    fail(i, "recursive level with factor dividing modulus".into());
                    continue;
                }
                let quot = b.div_floor(a);
                let value = &level.value;

                // (1) value = mu * floor(b/a) + child
                if *value != mu.clone() * quot.clone() + child.clone() {
                    fail(i, "value != mu * floor(b/a) + child".into());
                }
                // (2) residue of the solution equals child*a - mu*[b]_a,
                // which must itself lie in [0, b)
                let residue = (a.clone() * value.clone()).mod_floor(b);
                let predicted = child.clone() * a.clone() - mu.clone() * remainder.clone();
                if predicted.is_negative() || predicted >= *b {
                    fail(i, "child*a - mu*[b]_a outside [0, modulus)".into());
                }
                if residue != predicted {
                    fail(i, "residue at the solution != child*a - mu*[b]_a".into());
                }
                // (3) sandwich: child*(a-c)/(c*floor(b/a)+[b]_a) <= mu <= child*a/[b]_a
                let child_r = Ratio::from_integer(child.clone());
                let mu_r = Ratio::from_integer(mu.clone());
                let lower = child_r.clone() * (Ratio::from_integer(a.clone()) - c.clone())
                    / (c.clone() * Ratio::from_integer(quot) + Ratio::from_integer(remainder.clone()));
                let upper = child_r * Ratio::new(a.clone(), remainder.clone());
                if mu_r < lower || mu_r > upper {
                    fail(i, "mu violates the sandwich bounds".into());
                }
                // (4) child = ceil(mu * [b]_a / a)
                if *child != (mu.clone() * remainder).div_ceil(a) {
                    fail(i, "child != ceil(mu * [b]_a / a)".into());
                }
                // (5) value solves the inequality and value - 1 does not
                let residue_r = Ratio::from_integer(residue);
                if residue_r > c.clone() * Ratio::from_integer(value.clone()) {
                    fail(i, "recorded value does not solve the inequality".into());
                }
                if *value >= T::from_u8(2).expect("small constant") {
                    let prev = value.clone() - T::one();
                    let prev_residue = (a.clone() * prev.clone()).mod_floor(b);
                    if Ratio::from_integer(prev_residue) <= c.clone() * Ratio::from_integer(prev) {
                        fail(i, "value - 1 already solves the inequality".into());
                    }
                }
            }
        }
    }
    out
}

/// Number of division steps Euclid's algorithm takes on `(modulus,
/// factor)`; the recursion never has more trace levels than this.
pub fn euclidean_chain_length<T: SolverInt>(modulus: &T, factor: &T) -> usize {
    let mut x = modulus.clone();
    let mut y = factor.mod_floor(modulus);
    let mut steps = 0usize;
    while !y.is_zero() {
        let r = x.mod_floor(&y);
        x = y;
        y = r;
        steps += 1;
    }
    steps.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    type I = i128;

    fn inst(a: I, b: I, num: I, den: I) -> PmdInstance<I> {
        PmdInstance::new(a, b, Ratio::new(num, den)).unwrap()
    }

    #[test]
    fn validation_rejects_bad_instances() {
        assert_eq!(
            PmdInstance::new(2i128, 0, Ratio::new(1, 1)).unwrap_err(),
            Error::NonPositiveModulus
        );
        assert_eq!(
            PmdInstance::new(2i128, 10, Ratio::new(-1, 2)).unwrap_err(),
            Error::NonPositiveProportion
        );
        assert_eq!(
            PmdInstance::new(-1i128, 10, Ratio::new(1, 2)).unwrap_err(),
            Error::NegativeFactor
        );
    }

    #[test]
    fn reduce_factor_examples() {
        assert_eq!(inst(17, 10, 1, 1).reduce_factor(), inst(7, 10, 1, 1));
        assert_eq!(inst(7, 10, 1, 1).reduce_factor(), inst(7, 10, 1, 1));
        assert_eq!(inst(20, 10, 1, 1).reduce_factor(), inst(0, 10, 1, 1));
    }

    #[test]
    fn reduce_gcd_examples() {
        assert_eq!(inst(4, 10, 2, 1).reduce_gcd(), inst(2, 5, 1, 1));
        assert_eq!(inst(7, 10, 1, 1).reduce_gcd(), inst(7, 10, 1, 1));
        assert_eq!(inst(6, 9, 2, 5).reduce_gcd(), inst(2, 3, 2, 15));
    }

    #[test]
    fn solve_base_cases() {
        assert_eq!(solve(&inst(3, 7, 5, 1)).unwrap().value, 1);
        assert_eq!(solve(&inst(2, 10, 1, 1)).unwrap().value, 5);
        assert_eq!(solve(&inst(0, 10, 1, 2)).unwrap().value, 1);
    }

    #[test]
    fn solve_worked_example_with_trace() {
        let result = solve(&inst(7, 10, 1, 1)).unwrap();
        assert_eq!(result.value, 3);
        assert_eq!(result.trace.len(), 2);

        let top = &result.trace[0];
        assert_eq!(top.depth, 0);
        assert_eq!(top.branch, Branch::Recurse);
        assert_eq!((top.factor, top.modulus), (7, 10));
        assert_eq!(top.mu, Some(2));
        assert_eq!(top.child_value, Some(1));
        assert_eq!(top.value, 3);

        let child = &result.trace[1];
        assert_eq!(child.depth, 1);
        assert_eq!(child.branch, Branch::ProportionDominates);
        assert_eq!((child.factor, child.modulus), (1, 3));
        assert_eq!(child.proportion, Ratio::new(5, 2));
        assert_eq!(child.value, 1);
    }

    #[test]
    fn solve_matches_gcd_reduced_form() {
        let full = solve(&inst(4, 10, 2, 1)).unwrap();
        let reduced = solve(&inst(2, 5, 1, 1)).unwrap();
        assert_eq!(full.value, 3);
        assert_eq!(full.value, reduced.value);
    }

    #[test]
    fn naive_examples() {
        assert_eq!(solve_naive(&inst(7, 10, 1, 1)).unwrap(), 3);
        assert_eq!(solve_naive(&inst(2, 10, 1, 1)).unwrap(), 5);
        assert_eq!(solve_naive(&inst(0, 10, 1, 2)).unwrap(), 1);
    }

    #[test]
    fn verify_trace_accepts_solver_output() {
        assert!(verify_trace(&solve(&inst(7, 10, 1, 1)).unwrap()).is_empty());
        assert!(verify_trace(&solve(&inst(3, 7, 5, 1)).unwrap()).is_empty());
        assert!(verify_trace(&solve(&inst(129, 367, 2, 7)).unwrap()).is_empty());
    }

    #[test]
    fn verify_trace_flags_corrupted_mu() {
        let mut result = solve(&inst(7, 10, 1, 1)).unwrap();
        let mu = result.trace[0].mu.as_mut().unwrap();
        *mu += 1;
        let violations = verify_trace(&result);
        assert!(!violations.is_empty());
        assert!(violations
            .iter()
            .any(|v| v.message.contains("mu * floor(b/a)")));
    }

    #[test]
    fn chain_length_bounds_trace_depth() {
        for (a, b) in [(7i128, 10), (1, 3), (89, 144), (100, 101), (0, 5)] {
            let result = solve(&PmdInstance::new(a, b, Ratio::new(1, 3)).unwrap()).unwrap();
            assert!(result.trace.len() <= euclidean_chain_length(&b, &a));
        }
    }
}
