//! Library side of the `herdisc` command-line tool.
//!
//! `main.rs` only parses arguments and maps errors to exit codes; everything
//! else lives here so it can be driven from tests.

mod bench;
mod solve;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use herdisc::bounds::{bound_report, BoundReport};
use herdisc::instances::{matrix_to_csv, read_matrix_csv, write_matrix_csv, GeneratorSpec, MatrixKind};
use herdisc::measures::{herdisc_exact_capped, NormKind, HERDISC_EXACT_MAX_N};
use serde::Serialize;

pub use bench::{bench_records, summarize, BenchConfig, BenchRecord, SummaryRow};
pub use solve::{run_algorithm, Algorithm, SolverOptions, SolveReport, SolverRun};

/// Slack allowed when checking a lower bound against the exact oracle.
const SOUNDNESS_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "herdisc", version, about = "Low-discrepancy colorings and hereditary discrepancy bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance as CSV.
    Gen(GenArgs),
    /// Color the columns of a CSV matrix.
    Solve(SolveArgs),
    /// Eigenvalue, trace and determinant lower bounds for a CSV matrix.
    Bounds(BoundsArgs),
    /// Seeded sweep over generators, sizes and algorithms.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: MatrixKind,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub rows: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub cols: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; the CSV goes to standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Matrix in CSV form.
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::L2min)]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
}

/// Knobs shared by `solve` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Time budget for samplemany; defaults to the measured l2min time.
    #[arg(long, conflicts_with = "budget_draws")]
    pub budget_ms: Option<u64>,
    /// Fixed number of draws for samplemany (reproducible).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_draws: Option<u64>,
    /// Constant c₀ of the randomized variant's step size.
    #[arg(long, default_value_t = herdisc::coloring::RandomizedParams::DEFAULT_C0)]
    pub c0: f64,
    /// Edge-Walk: total budget constant c.
    #[arg(long = "ew-c", default_value_t = 8.0)]
    pub ew_c: f64,
    /// Edge-Walk: band width δ.
    #[arg(long = "ew-delta", default_value_t = herdisc::edgewalk::WalkParams::DEFAULT_DELTA)]
    pub ew_delta: f64,
    /// Edge-Walk: step length γ (default δ/(10·√(ln(nm)+1))).
    #[arg(long = "ew-gamma")]
    pub ew_gamma: Option<f64>,
    /// Edge-Walk: steps per walk (default ⌈64/γ²⌉).
    #[arg(long = "ew-steps")]
    pub ew_steps: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    pub matrix: PathBuf,
    /// Also compute herdisc exactly and check every bound against it.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = HERDISC_EXACT_MAX_N)]
    pub exact_max_n: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated MxN sizes.
    #[arg(long, value_delimiter = ',', value_parser = parse_size, default_value = "200x200")]
    pub sizes: Vec<(usize, usize)>,
    #[arg(long, value_delimiter = ',', value_parser = parse_kind, default_value = "uniform,corner,halfspace")]
    pub kinds: Vec<MatrixKind>,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "l2min,sample,samplemany")]
    pub algos: Vec<Algorithm>,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "bench.csv")]
    pub out: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
}

fn parse_kind(s: &str) -> Result<MatrixKind, String> {
    s.parse().map_err(|e: herdisc::Error| e.to_string())
}

/// Parses `MxN` (also `M×N`) with both sides at least 1.
pub fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X', '×'])
        .ok_or_else(|| format!("size {s:?} is not of the form MxN"))?;
    let side = |t: &str| match t.trim().parse::<usize>() {
        Ok(0) => Err(format!("size {s:?} has a zero dimension")),
        Ok(v) => Ok(v),
        Err(e) => Err(format!("size {s:?}: {e}")),
    };
    Ok((side(m)?, side(n)?))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Bounds(args) => cmd_bounds(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
    }
}

fn usize_of(v: u64) -> anyhow::Result<usize> {
    usize::try_from(v).context("dimension does not fit in usize")
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let spec = GeneratorSpec {
        kind: args.kind,
        rows: usize_of(args.rows)?,
        cols: usize_of(args.cols)?,
        seed: args.seed,
    };
    let a = spec.generate()?;
    let info = format!("{}x{} {} matrix, seed {}", a.rows(), a.cols(), spec.kind, spec.seed);
    match &args.out {
        Some(path) => {
            write_matrix_csv(&a, path).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "{info} -> {}", path.display())?;
        }
        None => {
            out.write_all(matrix_to_csv(&a).as_bytes())?;
            eprintln!("{info}");
        }
    }
    Ok(())
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let a = read_matrix_csv(&args.matrix).with_context(|| format!("reading {}", args.matrix.display()))?;
    let options = SolverOptions::from(&args.solver);
    let run = run_algorithm(args.algo, &a, args.seed, &options, herdisc::rng::seeded)?;
    let line: Vec<String> = run.coloring.signs().iter().map(|s| s.to_string()).collect();
    writeln!(out, "{}", line.join(","))?;
    let report = SolveReport::new(args.algo, &a, args.seed, &run);
    writeln!(out, "{}", serde_json::to_string(&report)?)?;
    Ok(())
}

/// Exact hereditary discrepancy in both norms, printed by `bounds --exact`.
#[derive(Debug, Serialize)]
pub struct ExactCheck {
    pub herdisc_inf: f64,
    pub herdisc_l2: f64,
    pub sound: bool,
}

#[derive(Debug, Serialize)]
struct BoundsOutput {
    #[serde(flatten)]
    report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<ExactCheck>,
}

/// Every individual bound that must not exceed the exact values.
fn bound_violations(report: &BoundReport, exact: &ExactCheck) -> Vec<String> {
    let mut bad = Vec::new();
    let mut check = |name: String, v: f64, limit: f64| {
        if v > limit + SOUNDNESS_TOL {
            bad.push(format!("{name} = {v} exceeds herdisc {limit}"));
        }
    };
    for &(k, v) in &report.per_k_inf {
        check(format!("per_k_inf[{k}]"), v, exact.herdisc_inf);
    }
    for &(k, v) in &report.per_k_inf_prod {
        check(format!("per_k_inf_prod[{k}]"), v, exact.herdisc_inf);
    }
    check("trace_bound".into(), report.trace_bound, exact.herdisc_inf);
    for &(k, v) in &report.per_k_l2 {
        check(format!("per_k_l2[{k}]"), v, exact.herdisc_l2);
    }
    if let Some(v) = report.det_bound_l2 {
        check("det_bound_l2".into(), v, exact.herdisc_l2);
    }
    bad
}

pub fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let a = read_matrix_csv(&args.matrix).with_context(|| format!("reading {}", args.matrix.display()))?;
    let report = bound_report(&a)?;
    let mut violations = Vec::new();
    let exact = if args.exact {
        let herdisc_inf = herdisc_exact_capped(&a, NormKind::LInfinity, args.exact_max_n)?;
        let herdisc_l2 = herdisc_exact_capped(&a, NormKind::L2, args.exact_max_n)?;
        let mut check = ExactCheck {
            herdisc_inf,
            herdisc_l2,
            sound: true,
        };
        violations = bound_violations(&report, &check);
        check.sound = violations.is_empty();
        Some(check)
    } else {
        None
    };
    writeln!(out, "{}", serde_json::to_string(&BoundsOutput { report, exact })?)?;
    if !violations.is_empty() {
        bail!("lower bound exceeds exact herdisc: {}", violations.join("; "));
    }
    Ok(())
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let config = BenchConfig {
        sizes: args.sizes.clone(),
        kinds: args.kinds.clone(),
        algos: args.algos.clone(),
        trials: args.trials,
        seed: args.seed,
        options: SolverOptions::from(&args.solver),
    };
    let records = bench_records(&config)?;
    let mut writer = csv::Writer::from_path(&args.out).with_context(|| format!("writing {}", args.out.display()))?;
    for r in &records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    bench::print_summary(&config, &summarize(&records), out)?;
    writeln!(out, "{} records -> {}", records.len(), args.out.display())?;
    Ok(())
}
