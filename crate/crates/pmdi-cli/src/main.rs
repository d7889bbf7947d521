//! `pmdi` — least positive solutions of `(a*x mod b) <= c*x` and the
//! numerical semigroup quantities derived from them.
//!
//! Exit codes: 0 success, 1 property or oracle violation, 2 usage or
//! parse error.
//!
//! Randomized subcommands (`fuzz`, `bench`) draw from ChaCha8 seeded
//! with `ChaCha8Rng::seed_from_u64`, so a seed reproduces the same
//! instance stream on any build.

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num::rational::Ratio;
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use pmdi::{
    euclidean_chain_length, frobenius_f1, frobenius_naive, interval_multiplicity,
    interval_multiplicity_naive, parse_rational, quotient_multiplicity,
    quotient_multiplicity_naive, solve, solve_naive, verify_trace, Branch, Instance, Int,
    PmdInstance, QuotientQuery, Rational, RationalInterval, SolveResult, TwoGenSemigroup,
};

#[derive(Parser)]
#[command(name = "pmdi", version, about = "Least positive solution of (a*x mod b) <= c*x, with semigroup applications")]
struct Cli {
    /// Print the full recursion trace as JSON (solve only)
    #[arg(long, global = true)]
    trace: bool,
    /// Cross-check the answer against the brute-force oracle
    #[arg(long, global = true)]
    oracle: bool,
    /// Emit results as JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Least positive x with (a*x mod b) <= c*x
    Solve { a: String, b: String, c: String },
    /// Multiplicity of the quotient semigroup <a1, a2> / d
    Quotient { a1: String, a2: String, d: String },
    /// Multiplicity of the semigroup of the rational interval [p, q]
    Interval { p: String, q: String },
    /// Frobenius number of the solution set of (a*x mod b) <= x
    Frobenius { a: String, b: String },
    /// Solve instances from a CSV file ("a,b,c" per line, '#' comments)
    Batch { input: PathBuf, output: PathBuf },
    /// Differential fuzzing of the solver against the scan oracle
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Cap on the modulus, keeping the oracle scan feasible
        #[arg(long, default_value_t = 500)]
        max_b: u64,
        #[arg(long, default_value_t = 12)]
        max_c_num: u64,
        #[arg(long, default_value_t = 12)]
        max_c_den: u64,
    },
    /// Recursion depth and wall time for moduli near 10^k, k = 4..=N
    Bench {
        #[arg(default_value_t = 6)]
        max_b_exponent: u32,
    },
}

/// A failed run: usage errors exit 2, violated properties exit 1.
enum Failure {
    Usage(String),
    Violation(String),
}

impl From<pmdi::Error> for Failure {
    fn from(err: pmdi::Error) -> Self {
        Failure::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("pmdi: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("pmdi: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Solve { a, b, c } => cmd_solve(a, b, c, &cli),
        Command::Quotient { a1, a2, d } => cmd_quotient(a1, a2, d, &cli),
        Command::Interval { p, q } => cmd_interval(p, q, &cli),
        Command::Frobenius { a, b } => cmd_frobenius(a, b, &cli),
        Command::Batch { input, output } => cmd_batch(input, output),
        Command::Fuzz { seed, count, max_b, max_c_num, max_c_den } => {
            cmd_fuzz(*seed, *count, *max_b, *max_c_num, *max_c_den)
        }
        Command::Bench { max_b_exponent } => cmd_bench(*max_b_exponent),
    }
}

fn parse_int(text: &str, what: &str) -> Result<Int, Failure> {
    BigInt::from_str(text.trim())
        .map_err(|_| Failure::Usage(format!("cannot parse {what} `{text}` as an integer")))
}

fn print_value(value: &impl Display, json_mode: bool) {
    if json_mode {
        println!("{}", json!({ "value": value.to_string() }));
    } else {
        println!("{value}");
    }
}

fn branch_tag(branch: Branch) -> &'static str {
    match branch {
        Branch::ProportionDominates => "C_GE_A",
        Branch::FactorDivides => "A_DIVIDES_B",
        Branch::Recurse => "RECURSE",
    }
}

/// Stable trace schema; every big integer serializes as a decimal string.
fn trace_document(result: &SolveResult<Int>) -> serde_json::Value {
    let levels: Vec<_> = result
        .trace
        .iter()
        .map(|level| {
            json!({
                "depth": level.depth,
                "a": level.factor.to_string(),
                "b": level.modulus.to_string(),
                "c_num": level.proportion.numer().to_string(),
                "c_den": level.proportion.denom().to_string(),
                "branch": branch_tag(level.branch),
                "L": level.value.to_string(),
                "mu": level.mu.as_ref().map(|m| m.to_string()),
                "R": level.child_value.as_ref().map(|r| r.to_string()),
            })
        })
        .collect();
    json!({ "value": result.value.to_string(), "levels": levels })
}

fn cmd_solve(a: &str, b: &str, c: &str, cli: &Cli) -> Result<(), Failure> {
    let inst = Instance::new(
        parse_int(a, "factor")?,
        parse_int(b, "modulus")?,
        parse_rational::<Int>(c)?,
    )?;
    let result = solve(&inst)?;
    if cli.oracle {
        let scanned = solve_naive(&inst)?;
        if scanned != result.value {
            return Err(Failure::Violation(format!(
                "oracle mismatch on ({}, {}, {}): recursion {} vs scan {}",
                inst.factor, inst.modulus, inst.proportion, result.value, scanned
            )));
        }
    }
    if cli.trace {
        println!("{}", trace_document(&result));
    } else {
        print_value(&result.value, cli.json);
    }
    Ok(())
}

fn cmd_quotient(a1: &str, a2: &str, d: &str, cli: &Cli) -> Result<(), Failure> {
    let sg = TwoGenSemigroup::new(parse_int(a1, "generator")?, parse_int(a2, "generator")?)?;
    let query = QuotientQuery::new(sg, parse_int(d, "divisor")?)?;
    let value = quotient_multiplicity(&query)?;
    if cli.oracle {
        let scanned = quotient_multiplicity_naive(&query);
        if scanned != value {
            return Err(Failure::Violation(format!(
                "oracle mismatch on <{a1},{a2}> / {d}: formula {value} vs enumeration {scanned}"
            )));
        }
    }
    print_value(&value, cli.json);
    Ok(())
}

fn cmd_interval(p: &str, q: &str, cli: &Cli) -> Result<(), Failure> {
    let iv = RationalInterval::new(parse_rational::<Int>(p)?, parse_rational::<Int>(q)?)?;
    let value = interval_multiplicity(&iv)?;
    if cli.oracle {
        let scanned = interval_multiplicity_naive(&iv);
        if scanned != value {
            return Err(Failure::Violation(format!(
                "oracle mismatch on [{p}, {q}]: formula {value} vs scan {scanned}"
            )));
        }
    }
    print_value(&value, cli.json);
    Ok(())
}

fn cmd_frobenius(a: &str, b: &str, cli: &Cli) -> Result<(), Failure> {
    let a = parse_int(a, "factor")?;
    let b = parse_int(b, "modulus")?;
    let value = frobenius_f1(&a, &b)?;
    if cli.oracle {
        let scanned = frobenius_naive(&a, &b)?;
        if scanned != value {
            return Err(Failure::Violation(format!(
                "oracle mismatch on F({a}, {b}, 1): formula {value} vs scan {scanned}"
            )));
        }
    }
    print_value(&value, cli.json);
    Ok(())
}

fn solve_batch_line(line: &str) -> Result<Int, String> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    if fields.len() != 3 {
        return Err(format!("expected 3 fields, got {}", fields.len()));
    }
    let a = BigInt::from_str(fields[0]).map_err(|_| format!("cannot parse factor `{}`", fields[0]))?;
    let b = BigInt::from_str(fields[1]).map_err(|_| format!("cannot parse modulus `{}`", fields[1]))?;
    let c = parse_rational::<Int>(fields[2]).map_err(|e| e.to_string())?;
    let inst = Instance::new(a, b, c).map_err(|e| e.to_string())?;
    solve(&inst).map(|r| r.value).map_err(|e| e.to_string())
}

fn cmd_batch(input: &PathBuf, output: &PathBuf) -> Result<(), Failure> {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let mut rows = Vec::new();
    let mut solved = 0u64;
    let mut failed = 0u64;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match solve_batch_line(line) {
            Ok(value) => {
                solved += 1;
                rows.push(format!("{line},{value}"));
            }
            Err(message) => {
                failed += 1;
                rows.push(format!("{line},ERROR:{message}"));
            }
        }
    }
    let mut body = rows.join("\n");
    body.push('\n');
    fs::write(output, body)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", output.display())))?;
    eprintln!("{solved} solved, {failed} errors");
    if failed > 0 {
        return Err(Failure::Violation(format!("{failed} lines failed")));
    }
    Ok(())
}

fn cmd_fuzz(seed: u64, count: u64, max_b: u64, max_c_num: u64, max_c_den: u64) -> Result<(), Failure> {
    if count == 0 {
        return Err(Failure::Usage("count must be positive".into()));
    }
    if max_b < 2 || max_c_num == 0 || max_c_den == 0 {
        return Err(Failure::Usage("bounds must satisfy max_b >= 2 and max_c_* >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let b = rng.gen_range(2..=max_b);
        let a = rng.gen_range(1..b);
        let n = rng.gen_range(1..=max_c_num);
        let d = rng.gen_range(1..=max_c_den);
        let inst = PmdInstance::new(
            BigInt::from(a),
            BigInt::from(b),
            Ratio::new(BigInt::from(n), BigInt::from(d)),
        )?;
        let result = solve(&inst)?;
        let scanned = solve_naive(&inst)?;
        if result.value != scanned {
            return Err(Failure::Violation(format!(
                "oracle mismatch on ({a}, {b}, {n}/{d}): recursion {} vs scan {scanned}",
                result.value
            )));
        }
        let violations = verify_trace(&result);
        if !violations.is_empty() {
            return Err(Failure::Violation(format!(
                "trace violations on ({a}, {b}, {n}/{d}): {}",
                violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            )));
        }
    }
    println!("{count} OK");
    Ok(())
}

fn cmd_bench(max_b_exponent: u32) -> Result<(), Failure> {
    if !(4..=18).contains(&max_b_exponent) {
        return Err(Failure::Usage("max_b_exponent must be in [4, 18]".into()));
    }
    const NAIVE_CUTOFF: u64 = 10_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!("k,a,b,c,L,depth,chain,solve_ns,naive_ns");
    for k in 4..=max_b_exponent {
        for _ in 0..3 {
            let base = 10u64.pow(k);
            let b = base + rng.gen_range(0..base / 2);
            let a = rng.gen_range(1..b);
            let n = rng.gen_range(1u64..=10);
            let d = rng.gen_range(1u64..=10);
            let c: Rational = Ratio::new(BigInt::from(n), BigInt::from(d));
            let inst = PmdInstance::new(BigInt::from(a), BigInt::from(b), c.clone())?;

            let start = Instant::now();
            let result = solve(&inst)?;
            let solve_ns = start.elapsed().as_nanos();

            let chain = euclidean_chain_length(&inst.modulus, &inst.factor);
            if result.trace.len() > chain {
                return Err(Failure::Violation(format!(
                    "depth {} exceeds Euclid chain {chain} on ({a}, {b}, {n}/{d})",
                    result.trace.len()
                )));
            }

            let naive_cell = if b <= NAIVE_CUTOFF {
                let start = Instant::now();
                let scanned = solve_naive(&inst)?;
                let naive_ns = start.elapsed().as_nanos();
                if scanned != result.value {
                    return Err(Failure::Violation(format!(
                        "oracle mismatch on ({a}, {b}, {n}/{d}): recursion {} vs scan {scanned}",
                        result.value
                    )));
                }
                naive_ns.to_string()
            } else {
                "skipped".to_string()
            };
            println!(
                "{k},{a},{b},{n}/{d},{},{},{chain},{solve_ns},{naive_cell}",
                result.value,
                result.trace.len()
            );
        }
    }
    Ok(())
}
