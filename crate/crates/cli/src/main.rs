//! `weaksub`: batch front end for property checks, maximization, bound
//! tables, the counterexample suite and seeded benchmarks.
//!
//! Exit codes: 0 success, 1 property violation (or a bound exceeded),
//! 2 usage or schema error.

mod bench;
mod counterexamples;

use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use weaksub::bounds::{self, BoundKind, RatioTable};
use weaksub::check::{self, Caps, Checker};
use weaksub::instance::{Constraint, FunctionSpec, GroundSpec, InstanceFile};
use weaksub::solve::{self, LocalSearchOptions, SizeMode};
use weaksub::zoo::CardinalityProfile;
use weaksub::{Matroid, Mode, Property, SetFunction, Subset};

#[derive(Parser, Debug)]
#[command(name = "weaksub", version, about = "Weakly submodular set functions: checks, solvers and bounds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for pair scans and benchmark instances.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Greedy,
    Local,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Compare {
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Greedy,
    Local,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a property of the instance function (or its matroid).
    Check {
        /// Instance JSON file, or `-` for stdin.
        instance: String,
        /// normalized_nonnegative, monotone, submodular, weakly_submodular,
        /// cardinality_family or exchange_axiom.
        #[arg(long, default_value = "weakly_submodular")]
        property: String,
        /// Overrides the instance's `options.mode`
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Pairs drawn in sampled mode
        #[arg(long)]
        samples: Option<u64>,
        /// ChaCha8 seed for sampled mode
        #[arg(long)]
        seed: Option<u64>,
        /// Evaluate one pair instead of scanning: pass twice, each a
        /// comma-separated list of labels or indices.
        #[arg(long, num_args = 1)]
        pair: Vec<String>,
        /// Largest `a`, `b`, `c` scanned by cardinality_family.
        #[arg(long, default_value_t = 8)]
        triple_max: u64,
    },
    /// Maximize the instance function under its constraint.
    Maximize {
        /// Instance JSON file, or `-` for stdin
        instance: String,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        /// Local search accepts a swap only if it beats `(1 + epsilon) f(S)`
        #[arg(long)]
        epsilon: Option<f64>,
        /// Also solve exactly and report the empirical ratio
        #[arg(long, value_enum)]
        compare: Option<Compare>,
    },
    /// Tabulate approximation bounds.
    Bounds {
        #[arg(value_enum)]
        kind: KindArg,
        /// `A..B` (inclusive) or a single value.
        #[arg(long)]
        range: String,
        /// Exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Replay the fixed counterexample suite.
    Counterexamples,
    /// Seeded random instances, algorithm against brute force.
    Bench {
        #[arg(value_enum)]
        suite: bench::Suite,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Ground set size.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Cardinality `p` or matroid rank `s`.
        #[arg(long, default_value_t = 3)]
        param: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: Vec<String>,
    version: &'static str,
    wall_time_ms: f64,
    result: T,
}

/// What a command produced: a JSON result, optional CSV, and whether it
/// counts as a violation.
struct Outcome {
    json: serde_json::Value,
    csv: Option<String>,
    violation: bool,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, violation: bool) -> anyhow::Result<Outcome> {
        Ok(Outcome { json: serde_json::to_value(value)?, csv: None, violation })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(anyhow!("thread pool: {e}")),
        },
        None => run(&cli),
    };
    match outcome {
        Ok(out) => {
            match (cli.format, &out.csv) {
                (Format::Csv, Some(csv)) => emit(csv),
                _ => {
                    let report = Report {
                        command: std::env::args().collect(),
                        version: env!("CARGO_PKG_VERSION"),
                        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                        result: out.json,
                    };
                    emit(&(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"));
                }
            }
            ExitCode::from(out.violation as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let wants_csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Check { instance, property, mode, samples, seed, pair, triple_max } => {
            if wants_csv {
                bail!("check reports are JSON only");
            }
            let file = read_instance(instance)?;
            let property = parse_property(property)?;
            let mode = resolve_mode(&file, *mode, *samples, *seed);
            cmd_check(&file, property, mode, pair, *triple_max)
        }
        Command::Maximize { instance, algorithm, epsilon, compare } => {
            if wants_csv {
                bail!("maximize reports are JSON only");
            }
            let file = read_instance(instance)?;
            cmd_maximize(&file, *algorithm, *epsilon, compare.is_some())
        }
        Command::Bounds { kind, range, exact } => {
            let (lo, hi) = parse_range(range)?;
            let kind = match kind {
                KindArg::Greedy => BoundKind::Greedy,
                KindArg::Local => BoundKind::Local,
            };
            let table = RatioTable::build(kind, lo, hi, *exact)?;
            let csv = wants_csv.then(|| table.to_csv()).transpose()?;
            Ok(Outcome { json: serde_json::to_value(&table)?, csv, violation: false })
        }
        Command::Counterexamples => {
            if wants_csv {
                bail!("counterexample reports are JSON only");
            }
            let suite = counterexamples::run()?;
            let all = suite.iter().all(|e| e.reproduced);
            Outcome::json(&suite, !all)
        }
        Command::Bench { suite, instances, n, param, seed } => {
            let report = bench::run(*suite, *instances, *n, *param, *seed)?;
            let violation = !report.all_within_bound;
            let csv = wants_csv.then(|| report.to_csv()).transpose()?;
            Ok(Outcome { json: serde_json::to_value(&report)?, csv, violation })
        }
    }
}

fn read_instance(path: &str) -> anyhow::Result<InstanceFile> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

fn parse_property(s: &str) -> anyhow::Result<Property> {
    match s {
        "cardinality_family" => Ok(Property::CardinalityFamily),
        "exchange_axiom" => Ok(Property::ExchangeAxiom),
        other => Property::parse(other).ok_or_else(|| anyhow!("unknown property `{other}`")),
    }
}

fn resolve_mode(file: &InstanceFile, mode: Option<ModeArg>, samples: Option<u64>, seed: Option<u64>) -> Mode {
    let opts = &file.options;
    let sampled = match mode {
        Some(m) => m == ModeArg::Sampled,
        None => opts.mode() != Mode::Exhaustive,
    };
    if sampled {
        Mode::Sampled { samples: samples.or(opts.samples).unwrap_or(10_000), seed: seed.or(opts.seed).unwrap_or(0) }
    } else {
        Mode::Exhaustive
    }
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let parse = |t: &str| t.trim().parse::<usize>().with_context(|| format!("bad range bound `{t}`"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let v = parse(s)?;
            Ok((v, v))
        }
    }
}

fn parse_subset(f: &SetFunction, spec: &str) -> anyhow::Result<Subset> {
    let ground = f.ground();
    let elems = spec
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| ground.position(t).or_else(|| t.parse::<usize>().ok()).ok_or_else(|| anyhow!("unknown element `{t}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(ground.subset(elems)?)
}

#[derive(Serialize)]
struct PairReport {
    property: Property,
    s: Subset,
    t: Subset,
    lhs: weaksub::Value,
    rhs: weaksub::Value,
    passed: bool,
}

fn cmd_check(file: &InstanceFile, property: Property, mode: Mode, pair: &[String], triple_max: u64) -> anyhow::Result<Outcome> {
    match property {
        Property::ExchangeAxiom => {
            let n = file.function.build(file.ground_set.as_ref().map(GroundSpec::len))?.n();
            let spec = file.constraint.as_ref().ok_or_else(|| anyhow!("exchange_axiom needs a matroid constraint"))?;
            let Constraint::Matroid(m) = spec.build_unvalidated(n)? else {
                bail!("exchange_axiom needs a matroid constraint, not a cardinality bound");
            };
            let report = m.validate_exchange_axiom()?;
            let violation = !report.passed;
            return Outcome::json(&report, violation);
        }
        Property::CardinalityFamily => {
            let FunctionSpec::CardinalityPoly { coeffs, .. } = &file.function else {
                bail!("cardinality_family needs a cardinality_poly function");
            };
            let report = check::check_cardinality_family(&CardinalityProfile::new(coeffs.clone()), triple_max, triple_max, triple_max)?;
            let violation = !report.passed;
            return Outcome::json(&report, violation);
        }
        _ => {}
    }
    let f = file.build()?.function;
    if !pair.is_empty() {
        if pair.len() != 2 || !matches!(property, Property::Submodular | Property::WeaklySubmodular) {
            bail!("--pair takes exactly two sets and a pairwise property");
        }
        let (s, t) = (parse_subset(&f, &pair[0])?, parse_subset(&f, &pair[1])?);
        let (lhs, rhs) = check::pair_sides(&f, property, &s, &t)?;
        let passed = !weaksub::Value::violates_ge(lhs, rhs);
        return Outcome::json(&PairReport { property, s, t, lhs, rhs, passed }, !passed);
    }
    let checker = Checker::new(Caps::default());
    let report = match property {
        Property::NormalizedNonnegative => checker.normalized_nonnegative(&f, mode)?,
        Property::Monotone => checker.monotone(&f, mode)?,
        Property::Submodular => checker.submodular(&f, mode)?,
        _ => checker.weakly_submodular(&f, mode)?,
    };
    let violation = !report.passed;
    Outcome::json(&report, violation)
}

#[derive(Serialize)]
struct Comparison {
    optimum: solve::OptResult,
    empirical_ratio: f64,
    bound: f64,
    within_bound: bool,
}

#[derive(Serialize)]
struct MaximizeReport {
    algorithm: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<solve::SolveResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimum: Option<solve::OptResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Comparison>,
}

fn cmd_maximize(file: &InstanceFile, algorithm: Algorithm, epsilon: Option<f64>, compare: bool) -> anyhow::Result<Outcome> {
    let inst = file.build()?;
    let f = &inst.function;
    let constraint = inst.constraint.clone().ok_or_else(|| anyhow!("maximize needs a constraint"))?;
    let exact = |c: &Constraint| -> anyhow::Result<solve::OptResult> {
        Ok(match c {
            Constraint::Cardinality(p) => solve::brute_force_cardinality(f, *p, SizeMode::AtMost)?,
            Constraint::Matroid(m) => solve::brute_force_matroid(f, m)?,
        })
    };
    let (name, solution, bound) = match algorithm {
        Algorithm::Exact => {
            let opt = exact(&constraint)?;
            let report = MaximizeReport { algorithm: "exact", solution: None, optimum: Some(opt), comparison: None };
            return Outcome::json(&report, false);
        }
        Algorithm::Greedy => {
            let Constraint::Cardinality(p) = constraint else {
                bail!("greedy needs a cardinality constraint");
            };
            let sol = solve::greedy_cardinality(f, p)?;
            ("greedy", sol, if compare && p >= 2 { Some(bounds::greedy_ratio(p)?) } else { None })
        }
        Algorithm::Local => {
            let m = match &constraint {
                Constraint::Matroid(m) => m.clone(),
                Constraint::Cardinality(p) => Matroid::uniform(f.n(), *p),
            };
            let eps = epsilon.or(inst.options.epsilon).unwrap_or(0.0);
            let opts = LocalSearchOptions { epsilon: eps, ..LocalSearchOptions::default() };
            let sol = solve::local_search_matroid(f, &m, &opts)?;
            let bound = if compare && m.rank() >= 2 { Some(bounds::ls_bound(m.rank())?.0) } else { None };
            ("local", sol, bound)
        }
    };
    let comparison = if compare {
        let opt = exact(&constraint)?;
        let ratio = solve::empirical_ratio(opt.value, solution.value);
        let bound = bound.unwrap_or(1.0);
        Some(Comparison { within_bound: ratio <= bound * (1.0 + 1e-9), empirical_ratio: ratio, bound, optimum: opt })
    } else {
        None
    };
    let violation = comparison.as_ref().is_some_and(|c| !c.within_bound);
    let report = MaximizeReport { algorithm: name, solution: Some(solution), optimum: None, comparison };
    Outcome::json(&report, violation)
}
