//! `x116` command-line interface.
//!
//! Every subcommand writes one JSON object per line (or CSV with
//! `--format csv`). Exit codes: 0 success, 1 a checked property failed,
//! 2 a budget was exhausted or a result is incomplete, 3 usage error.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use config::{Config, Format};
use output::Sink;
use x116::arith::factor;
use x116::ecq::{heuristic_search, pi2_count, summarize, verify_section6_example, PzStatus};
use x116::identities::{verify_registry, Registry, Status};
use x116::quadform::{class_group, QuadForm};
use x116::x16::{census, cl5_pullback_with, point_from_t_with, ser_bigint, verify_table1, CensusItem};
use x116::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exit {
    Ok = 0,
    Violation = 1,
    Budget = 2,
    Usage = 3,
}

fn exit_for(e: &Error) -> Exit {
    match e {
        Error::IncompleteFactorization(_) | Error::BudgetExceeded(_) | Error::Overflow(_) => Exit::Budget,
        Error::UnexpectedOrder { .. } | Error::ExponentNotDivisible { .. } => Exit::Violation,
        _ => Exit::Usage,
    }
}

#[derive(Parser)]
#[command(name = "x116", version, about = "Class groups and quadratic points on X1(16)")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Trial-division bound for factoring.
    #[arg(long, global = true)]
    trial_bound: Option<u64>,
    /// Pollard rho iteration budget per composite.
    #[arg(long, global = true)]
    rho_iterations: Option<u64>,
    /// Miller-Rabin rounds above the deterministic range.
    #[arg(long, global = true)]
    prime_rounds: Option<u32>,
    /// Seed for the Miller-Rabin base stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write records to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

impl GlobalArgs {
    fn as_config(&self) -> Config {
        Config {
            trial_bound: self.trial_bound,
            rho_iterations: self.rho_iterations,
            prime_rounds: self.prime_rounds,
            rng_seed: self.seed,
            height_bound: None,
            worker_count: self.workers,
            output_path: self.output.clone(),
            format: self.format,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Factor an integer.
    Factor {
        #[arg(allow_hyphen_values = true)]
        n: BigInt,
    },
    /// Class group of a negative discriminant.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Class numbers and pulled-back classes for all t of height at most H.
    Census {
        #[arg(long)]
        height: Option<u64>,
        /// Write the records as JSONL to PATH.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// The order-5 class attached to one parameter t = R/S.
    Pullback {
        #[arg(long, allow_hyphen_values = true)]
        t: BigRational,
    },
    /// Re-check the registered algebraic claims.
    VerifyClaims {
        /// Restrict to these claim ids.
        #[arg(long)]
        only: Vec<String>,
    },
    /// Reproduce the table of exceptional points.
    VerifyTable1,
    /// Check the 181-digit example on E4.
    VerifyExample6,
    /// Search m·G on E4 for values 2(u⁴ + v⁴) of the form p·z².
    Heuristic {
        #[arg(long)]
        mmax: i64,
        /// Pollard rho iterations per value.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Count k < N of the form p·z².
    Pi2 {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Serialize)]
struct FactorLine {
    #[serde(serialize_with = "ser_bigint")]
    n: BigInt,
    sign: i8,
    factors: Vec<FactorEntry>,
    #[serde(serialize_with = "ser_opt_bigint")]
    cofactor: Option<BigInt>,
    complete: bool,
}

#[derive(Serialize)]
struct FactorEntry {
    #[serde(serialize_with = "ser_bigint")]
    p: BigInt,
    e: u32,
}

fn ser_opt_bigint<S: serde::Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => ser_bigint(n, s),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
struct ClassGroupLine {
    disc: i64,
    h: u64,
    structure: Vec<u64>,
    two_rank: u32,
    forms: Vec<QuadForm>,
}

#[derive(Serialize)]
struct ClaimSummary {
    summary: bool,
    pass: usize,
    fail: usize,
    external: usize,
}

#[derive(Serialize)]
struct Example6Line {
    ok: bool,
    #[serde(flatten)]
    report: x116::ecq::ExampleReport,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage } else { Exit::Ok };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let cfg = match Config::from_env() {
        Ok(c) => c.overlay(cli.global.as_config()),
        Err(e) => {
            eprintln!("x116: config: {e}");
            return ExitCode::from(Exit::Usage as u8);
        }
    };
    if let Some(n) = cfg.worker_count {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("x116: workers: {e}");
        }
    }
    match run(cli.command, &cfg) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Core(e)) => {
            eprintln!("x116: {e}");
            ExitCode::from(exit_for(&e) as u8)
        }
        Err(Failure::Io(e)) => {
            eprintln!("x116: {e}");
            ExitCode::from(Exit::Usage as u8)
        }
    }
}

enum Failure {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn run(cmd: Command, cfg: &Config) -> Result<Exit, Failure> {
    let budget = cfg.budget();
    let format = cfg.format.unwrap_or_default();
    let mut sink = Sink::open(cfg.output_path.as_deref(), format)?;
    let code = match cmd {
        Command::Factor { n } => {
            if n.is_zero() {
                return Err(Error::InvalidInput("cannot factor 0".into()).into());
            }
            let f = factor(&n, &budget);
            let complete = f.complete();
            sink.emit(&FactorLine {
                n,
                sign: f.sign,
                factors: f.factors.into_iter().map(|(p, e)| FactorEntry { p, e }).collect(),
                cofactor: f.cofactor,
                complete,
            })?;
            if complete {
                Exit::Ok
            } else {
                Exit::Budget
            }
        }
        Command::Classgroup { disc } => {
            if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
                return Err(Error::InvalidInput(format!("{disc} is not a negative discriminant")).into());
            }
            let cg = class_group(disc);
            sink.emit(&ClassGroupLine {
                disc,
                h: cg.h,
                two_rank: cg.two_rank(),
                structure: cg.elementary_divisors.clone(),
                forms: cg.reduced_forms.clone(),
            })?;
            Exit::Ok
        }
        Command::Census { height, jsonl } => {
            let height = height.or(cfg.height_bound).unwrap_or(50);
            if let Some(path) = jsonl {
                sink = Sink::open(Some(&path), Format::Jsonl)?;
            }
            let mut io_err = None;
            let summary = census(height, &budget, |item: &CensusItem| {
                if io_err.is_none() {
                    io_err = sink.emit(item).err();
                }
            });
            if let Some(e) = io_err {
                return Err(e.into());
            }
            sink.emit(&summary)?;
            if !summary.violations.is_empty() {
                Exit::Violation
            } else if summary.failures > 0 {
                Exit::Budget
            } else {
                Exit::Ok
            }
        }
        Command::Pullback { t } => {
            let p = point_from_t_with(&t, &budget)?;
            sink.emit(&cl5_pullback_with(&p, 1, &budget)?)?;
            Exit::Ok
        }
        Command::VerifyClaims { only } => {
            let reg = Registry::builtin();
            let only = (!only.is_empty()).then_some(only.as_slice());
            let reports = verify_registry(&reg, only)?;
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            for r in &reports {
                sink.emit(r)?;
            }
            let summary = ClaimSummary {
                summary: true,
                pass: count(Status::Pass),
                fail: count(Status::Fail),
                external: count(Status::External),
            };
            sink.emit(&summary)?;
            if summary.fail > 0 {
                Exit::Violation
            } else {
                Exit::Ok
            }
        }
        Command::VerifyTable1 => {
            let rows = verify_table1()?;
            for r in &rows {
                sink.emit(r)?;
            }
            if rows.iter().all(|r| r.ok()) {
                Exit::Ok
            } else {
                Exit::Violation
            }
        }
        Command::VerifyExample6 => {
            let report = verify_section6_example();
            let ok = report.ok();
            sink.emit(&Example6Line { ok, report })?;
            if ok {
                Exit::Ok
            } else {
                Exit::Violation
            }
        }
        Command::Heuristic { mmax, budget: rho } => {
            if mmax < 1 {
                return Err(Error::InvalidInput("--mmax must be positive".into()).into());
            }
            let fb = x116::arith::FactorBudget { rho_iterations: rho.unwrap_or(budget.rho_iterations), ..budget };
            let records = heuristic_search(mmax, &fb)?;
            for r in &records {
                if let Some(hit) = r.hit_line() {
                    sink.emit(&hit)?;
                }
            }
            let summary = summarize(mmax, &records);
            sink.emit(&summary)?;
            if records.iter().any(|r| matches!(r.status, PzStatus::Untested { .. })) {
                Exit::Budget
            } else {
                Exit::Ok
            }
        }
        Command::Pi2 { n } => {
            let count = pi2_count(n)?;
            let ratio = if n > 1 { count as f64 * (n as f64).ln() / n as f64 } else { 0.0 };
            sink.emit(&x116::ecq::Pi2Row { n, count, ratio })?;
            Exit::Ok
        }
    };
    sink.finish()?;
    Ok(code)
}
