use std::collections::BTreeMap;
use std::io::Write;

use herdisc::coloring::Budget;
use herdisc::instances::{generate, MatrixKind};
use herdisc::rng::{seeded, solver_stream};
use serde::{Deserialize, Serialize};

use crate::solve::{run_with_budget, time_l2min, Algorithm, SolverOptions};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<(usize, usize)>,
    pub kinds: Vec<MatrixKind>,
    pub algos: Vec<Algorithm>,
    pub trials: u64,
    pub seed: u64,
    pub options: SolverOptions,
}

/// One CSV row. Field order is the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub kind: MatrixKind,
    pub m: usize,
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    pub disc2: f64,
    pub disc_inf: f64,
    pub time_ms: f64,
}

/// Trial `t` uses seed `base + t`: the matrix comes from `seeded(seed)` and
/// every algorithm gets its own fresh `solver_stream(seed)`.
pub fn bench_records(config: &BenchConfig) -> anyhow::Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &(m, n) in &config.sizes {
        for &kind in &config.kinds {
            for trial in 0..config.trials {
                let seed = config.seed.wrapping_add(trial);
                let a = generate(kind, m, n, &mut seeded(seed));
                let mut l2min_time = None;
                for &algo in &config.algos {
                    let budget = match (algo, config.options.budget) {
                        (Algorithm::Samplemany, None) => {
                            let t = match l2min_time {
                                Some(t) => t,
                                None => time_l2min(&a, seed, solver_stream)?,
                            };
                            Some(Budget::Time(t))
                        }
                        (_, b) => b,
                    };
                    let run = run_with_budget(algo, &a, seed, &config.options, budget, solver_stream)?;
                    if algo == Algorithm::L2min {
                        l2min_time = Some(run.time);
                    }
                    records.push(BenchRecord {
                        algorithm: algo,
                        kind,
                        m,
                        n,
                        trial,
                        seed,
                        disc2: run.stats.disc2,
                        disc_inf: run.stats.disc_inf,
                        time_ms: run.time.as_secs_f64() * 1e3,
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Means over the records of one (algorithm, size, kind) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: Algorithm,
    pub m: usize,
    pub n: usize,
    pub kind: MatrixKind,
    pub count: usize,
    pub disc2: f64,
    pub disc_inf: f64,
    pub time_ms: f64,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut cells: BTreeMap<(usize, usize, Algorithm, MatrixKind), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        cells.entry((r.m, r.n, r.algorithm, r.kind)).or_default().push(r);
    }
    cells
        .into_iter()
        .map(|((m, n, algorithm, kind), rs)| {
            let mean = |f: fn(&BenchRecord) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / rs.len() as f64;
            SummaryRow {
                algorithm,
                m,
                n,
                kind,
                count: rs.len(),
                disc2: mean(|r| r.disc2),
                disc_inf: mean(|r| r.disc_inf),
                time_ms: mean(|r| r.time_ms),
            }
        })
        .collect()
}

/// One line per (algorithm, size) with a mean-disc2 column per kind and the
/// mean time over all kinds.
pub(crate) fn print_summary(config: &BenchConfig, rows: &[SummaryRow], out: &mut dyn Write) -> std::io::Result<()> {
    write!(out, "{:<12} {:>11}", "algorithm", "size")?;
    for kind in &config.kinds {
        write!(out, " {:>11}", format!("{kind}"))?;
    }
    writeln!(out, " {:>11}", "time_ms")?;
    for &(m, n) in &config.sizes {
        for &algo in &config.algos {
            let cell: Vec<&SummaryRow> = rows
                .iter()
                .filter(|r| r.algorithm == algo && r.m == m && r.n == n)
                .collect();
            write!(out, "{:<12} {:>11}", algo.name(), format!("{m}x{n}"))?;
            for kind in &config.kinds {
                match cell.iter().find(|r| r.kind == *kind) {
                    Some(r) => write!(out, " {:>11.3}", r.disc2)?,
                    None => write!(out, " {:>11}", "-")?,
                }
            }
            let total: usize = cell.iter().map(|r| r.count).sum();
            let time = cell.iter().map(|r| r.time_ms * r.count as f64).sum::<f64>() / total.max(1) as f64;
            writeln!(out, " {time:>11.1}")?;
        }
    }
    Ok(())
}
