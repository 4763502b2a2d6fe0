use std::time::{Duration, Instant};

use anyhow::bail;
use clap::ValueEnum;
use herdisc::coloring::{l2_minimize, l2_minimize_randomized, sample, sample_many, Budget, SolveStats};
use herdisc::edgewalk::{spencer_color, SpencerConfig};
use herdisc::measures::ColorVector;
use herdisc::rng::DiscRng;
use herdisc::DenseMatrix;
use serde::{Deserialize, Serialize};

use crate::SolverArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    L2min,
    L2minRand,
    Sample,
    Samplemany,
    Edgewalk,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::L2min => "l2min",
            Algorithm::L2minRand => "l2min-rand",
            Algorithm::Sample => "sample",
            Algorithm::Samplemany => "samplemany",
            Algorithm::Edgewalk => "edgewalk",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// `None`: samplemany gets as long as l2min takes on the same matrix.
    pub budget: Option<Budget>,
    pub c0: f64,
    pub spencer: SpencerConfig,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            budget: None,
            c0: herdisc::coloring::RandomizedParams::DEFAULT_C0,
            spencer: SpencerConfig::default(),
        }
    }
}

impl From<&SolverArgs> for SolverOptions {
    fn from(args: &SolverArgs) -> Self {
        let budget = match (args.budget_ms, args.budget_draws) {
            (Some(ms), _) => Some(Budget::Time(Duration::from_millis(ms))),
            (None, Some(d)) => Some(Budget::Draws(d as usize)),
            (None, None) => None,
        };
        Self {
            budget,
            c0: args.c0,
            spencer: SpencerConfig {
                c: args.ew_c,
                delta: args.ew_delta,
                gamma: args.ew_gamma,
                steps: args.ew_steps,
                ..SpencerConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverRun {
    pub coloring: ColorVector,
    pub stats: SolveStats,
    /// Time spent in the solver call, excluding any l2min calibration run.
    pub time: Duration,
}

/// Runs `algo` with randomness from `stream(seed)`. A fresh stream is taken
/// for every solver call, so samplemany's calibration run does not shift it.
pub fn run_algorithm(
    algo: Algorithm,
    a: &DenseMatrix,
    seed: u64,
    options: &SolverOptions,
    stream: fn(u64) -> DiscRng,
) -> anyhow::Result<SolverRun> {
    let budget = match (algo, options.budget) {
        (Algorithm::Samplemany, None) => Some(Budget::Time(time_l2min(a, seed, stream)?)),
        (_, b) => b,
    };
    run_with_budget(algo, a, seed, options, budget, stream)
}

pub(crate) fn time_l2min(a: &DenseMatrix, seed: u64, stream: fn(u64) -> DiscRng) -> anyhow::Result<Duration> {
    let started = Instant::now();
    l2_minimize(a, &mut stream(seed))?;
    Ok(started.elapsed())
}

pub(crate) fn run_with_budget(
    algo: Algorithm,
    a: &DenseMatrix,
    seed: u64,
    options: &SolverOptions,
    budget: Option<Budget>,
    stream: fn(u64) -> DiscRng,
) -> anyhow::Result<SolverRun> {
    let mut rng = stream(seed);
    let started = Instant::now();
    let (coloring, stats) = match algo {
        Algorithm::L2min => l2_minimize(a, &mut rng)?,
        Algorithm::L2minRand => l2_minimize_randomized(a, options.c0, &mut rng)?,
        Algorithm::Sample => sample(a, &mut rng)?,
        Algorithm::Samplemany => {
            let Some(budget) = budget else {
                bail!("samplemany needs a budget");
            };
            sample_many(a, budget, &mut rng)?
        }
        Algorithm::Edgewalk => {
            let (x, stats, _) = spencer_color(a, &options.spencer, &mut rng)?;
            (x, stats)
        }
    };
    Ok(SolverRun {
        coloring,
        stats,
        time: started.elapsed(),
    })
}

/// The JSON object printed by `solve`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub disc2: f64,
    pub disc_inf: f64,
    pub time_ms: f64,
    pub partial_color_calls: usize,
}

impl SolveReport {
    pub fn new(algo: Algorithm, a: &DenseMatrix, seed: u64, run: &SolverRun) -> Self {
        Self {
            algorithm: algo,
            m: a.rows(),
            n: a.cols(),
            seed,
            disc2: run.stats.disc2,
            disc_inf: run.stats.disc_inf,
            time_ms: run.time.as_secs_f64() * 1e3,
            partial_color_calls: run.stats.partial_color_calls,
        }
    }
}
