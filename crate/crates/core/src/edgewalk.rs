//! Edge-Walk: a Gaussian walk in the cube that freezes against constraints
//! as it nearly hits them.
//!
//! Hit constraint normals (coordinate vectors and discrepancy rows) are kept
//! in an [`OrthonormalBasis`], so each step costs one complement projection
//! plus one pass over the rows.

use std::time::Instant;

use rand::Rng;

use crate::coloring::{PartialColoring, SolveStats};
use crate::linalg::{dot, gaussian_vector, norm2, DenseMatrix, OrthonormalBasis};
use crate::measures::ColorVector;
use crate::{Error, Result};

/// Step controls for a single walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    /// Nearness slack δ: a constraint is hit once within δ of its bound.
    pub delta: f64,
    /// Step length γ, at most δ/10.
    pub gamma: f64,
    /// Iteration budget T.
    pub steps: u64,
}

impl WalkParams {
    pub const DEFAULT_DELTA: f64 = 0.1;

    /// `δ = 0.1`, `γ = δ / (10·√(ln(nm) + 1))`, `T = ⌈64/γ²⌉`.
    pub fn defaults(n: usize, m: usize) -> Self {
        let delta = Self::DEFAULT_DELTA;
        Self::with_gamma(delta, Self::default_gamma(delta, n, m))
    }

    /// `δ / (10·√(ln(nm) + 1))`.
    pub fn default_gamma(delta: f64, n: usize, m: usize) -> f64 {
        let nm = (n.max(1) * m.max(1)) as f64;
        delta / (10.0 * (nm.ln() + 1.0).sqrt())
    }

    /// Given δ and γ, sets `T = ⌈64/γ²⌉`.
    pub fn with_gamma(delta: f64, gamma: f64) -> Self {
        Self {
            delta,
            gamma,
            steps: (64.0 / (gamma * gamma)).ceil() as u64,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if !(self.gamma > 0.0 && self.gamma <= self.delta / 10.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (0, delta/10], got {}",
                self.gamma
            )));
        }
        Ok(())
    }
}

/// A validated walk instance with unit-norm rows.
#[derive(Debug, Clone)]
pub struct EdgeWalkProblem {
    n: usize,
    /// Normalized rows, row-major; zero rows stay zero.
    rows: Vec<f64>,
    /// Thresholds in normalized units; `INFINITY` for zero rows.
    thresholds: Vec<f64>,
    x0: Vec<f64>,
    params: WalkParams,
}

impl EdgeWalkProblem {
    /// Rows are rescaled to unit norm and each threshold divided by the
    /// row's original norm, which leaves every constraint unchanged. An
    /// all-zero row can never be violated and is never hit.
    pub fn new(rows: &[Vec<f64>], thresholds: &[f64], x0: &[f64], params: WalkParams) -> Result<Self> {
        let n = x0.len();
        if n == 0 {
            return Err(Error::EmptyShape {
                rows: rows.len(),
                cols: 0,
            });
        }
        if thresholds.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: thresholds.len(),
            });
        }
        params.validate()?;
        if let Some(i) = x0.iter().position(|v| v.is_nan() || v.abs() > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "x0[{i}] = {} lies outside [-1, 1]",
                x0[i]
            )));
        }
        let mut flat = Vec::with_capacity(rows.len() * n);
        let mut scaled = Vec::with_capacity(rows.len());
        for (j, (row, &c)) in rows.iter().zip(thresholds).enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(col) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row: j, col });
            }
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "threshold {j} must be positive and finite, got {c}"
                )));
            }
            let r = norm2(row);
            if r == 0.0 {
                flat.extend(std::iter::repeat_n(0.0, n));
                scaled.push(f64::INFINITY);
            } else {
                flat.extend(row.iter().map(|v| v / r));
                scaled.push(c / r);
            }
        }
        Ok(Self {
            n,
            rows: flat,
            thresholds: scaled,
            x0: x0.to_vec(),
            params,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.thresholds.len()
    }

    pub fn params(&self) -> WalkParams {
        self.params
    }

    pub fn x0(&self) -> &[f64] {
        &self.x0
    }

    /// Unit-norm row `j` (all zeros for an inert row).
    pub fn row(&self, j: usize) -> &[f64] {
        &self.rows[j * self.n..(j + 1) * self.n]
    }

    /// Threshold of row `j` in unit-row units.
    pub fn threshold(&self, j: usize) -> f64 {
        self.thresholds[j]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWalkOutcome {
    pub x: Vec<f64>,
    /// Variables with `|Xᵢ| ≥ 1 − δ`, ascending.
    pub hit_vars: Vec<usize>,
    /// Rows with `|⟨X − x₀, v_j⟩| ≥ c_j − δ`, ascending.
    pub hit_rows: Vec<usize>,
    /// Set once `|hit_rows| ≥ n`; the walk stops there.
    pub failed: bool,
    /// Steps actually taken.
    pub steps: u64,
}

/// Snapshot passed to an observer after every step.
#[derive(Debug)]
pub struct WalkState<'a> {
    pub step: u64,
    pub x: &'a [f64],
    pub var_hit: &'a [bool],
    pub row_hit: &'a [bool],
}

pub fn edge_walk<R: Rng + ?Sized>(problem: &EdgeWalkProblem, rng: &mut R) -> EdgeWalkOutcome {
    edge_walk_observed(problem, rng, |_| {})
}

/// [`edge_walk`] that reports the state after every step.
pub fn edge_walk_observed<R, F>(problem: &EdgeWalkProblem, rng: &mut R, mut observe: F) -> EdgeWalkOutcome
where
    R: Rng + ?Sized,
    F: FnMut(&WalkState<'_>),
{
    let n = problem.n;
    let m = problem.m();
    let WalkParams { delta, gamma, steps } = problem.params;

    let mut x = problem.x0.clone();
    // dev[j] = ⟨X − x₀, v_j⟩, updated with each step.
    let mut dev = vec![0.0f64; m];
    let mut var_hit = vec![false; n];
    let mut row_hit = vec![false; m];
    let mut hit_rows = 0;
    let mut basis = OrthonormalBasis::new(n);
    let mut failed = false;
    let mut taken = 0;
    let mut step = vec![0.0; n];

    loop {
        for i in 0..n {
            if !var_hit[i] && x[i].abs() >= 1.0 - delta {
                var_hit[i] = true;
                basis
                    .add_coordinate(i)
                    .expect("coordinate index is in range");
            }
        }
        for j in 0..m {
            if !row_hit[j] && dev[j].abs() >= problem.thresholds[j] - delta {
                row_hit[j] = true;
                hit_rows += 1;
                basis.add(problem.row(j)).expect("row length matches");
            }
        }
        if hit_rows >= n {
            failed = true;
            break;
        }
        if taken == steps || basis.is_full() {
            break;
        }

        let y = gaussian_vector(rng, n);
        let u = basis.project_complement(&y).expect("sample length matches");
        for i in 0..n {
            step[i] = if var_hit[i] {
                0.0
            } else {
                let next = (x[i] + gamma * u[i]).clamp(-1.0, 1.0);
                next - x[i]
            };
        }
        for i in 0..n {
            x[i] += step[i];
        }
        for (j, d) in dev.iter_mut().enumerate() {
            if !problem.thresholds[j].is_infinite() {
                *d += dot(problem.row(j), &step);
            }
        }
        taken += 1;
        observe(&WalkState {
            step: taken,
            x: &x,
            var_hit: &var_hit,
            row_hit: &row_hit,
        });
    }

    EdgeWalkOutcome {
        x,
        hit_vars: indices(&var_hit),
        hit_rows: indices(&row_hit),
        failed,
        steps: taken,
    }
}

fn indices(flags: &[bool]) -> Vec<usize> {
    flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect()
}

/// Settings for [`spencer_driver`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpencerConfig {
    /// Constant `c` in the total budget `c·√(n·ln(e·m/n))`.
    pub c: f64,
    pub delta: f64,
    /// Step length; `None` selects the [`WalkParams::defaults`] value.
    pub gamma: Option<f64>,
    /// Walk length; `None` selects `⌈64/γ²⌉`.
    pub steps: Option<u64>,
    /// Walks tried per round before giving up.
    pub max_attempts: usize,
}

impl Default for SpencerConfig {
    fn default() -> Self {
        Self {
            c: 8.0,
            delta: WalkParams::DEFAULT_DELTA,
            gamma: None,
            steps: None,
            max_attempts: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundStats {
    /// Live coordinates entering the round.
    pub live: usize,
    /// Per-row budget `τ_r` for this round, in the units of `A`.
    pub threshold: f64,
    pub hit_vars: usize,
    pub hit_rows: usize,
    pub attempts: usize,
    pub steps: u64,
    /// `max_j |⟨x_after − x_before, a_j⟩|` over the round.
    pub max_row_shift: f64,
}

#[derive(Debug, Clone)]
pub struct SpencerOutcome {
    /// Final point; every coordinate is within δ of ±1.
    pub coloring: PartialColoring,
    pub rounds: Vec<RoundStats>,
    /// Total budget `D = c·√(n·ln(e·m/n))`; the round budgets sum to at most `D`.
    pub threshold: f64,
    pub delta: f64,
}

impl SpencerOutcome {
    /// Nearest signs of the final point; zero goes to `+1`.
    pub fn signs(&self) -> ColorVector {
        ColorVector::from_signs(self.coloring.x())
    }
}

/// Runs Edge-Walk rounds on the still-live coordinates until each is within
/// δ of ±1.
///
/// Round `r` with `n_r` live coordinates gets the row budget
/// `τ_r = D·√n_r / Σ_{s=0}^{⌈log₂ n⌉} √(n/2^s)`. A round must bring at least
/// `⌈n_r/2⌉` coordinates into the band, so `n_r ≤ n/2^r` and the budgets
/// sum to at most `D`.
pub fn spencer_driver<R: Rng + ?Sized>(
    a: &DenseMatrix,
    config: &SpencerConfig,
    rng: &mut R,
) -> Result<SpencerOutcome> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::InvalidParameter(format!(
            "needs at least as many rows as columns, got {m}×{n}"
        )));
    }
    if a.max_abs() > 1.0 {
        return Err(Error::InvalidParameter("entries must lie in [-1, 1]".into()));
    }
    if config.c.is_nan() || config.c <= 0.0 || config.max_attempts == 0 {
        return Err(Error::InvalidParameter(
            "c must be positive and max_attempts nonzero".into(),
        ));
    }
    let gamma = config
        .gamma
        .unwrap_or_else(|| WalkParams::default_gamma(config.delta, n, m));
    let mut params = WalkParams::with_gamma(config.delta, gamma);
    if let Some(steps) = config.steps {
        params.steps = steps;
    }
    params.validate()?;

    let total = config.c * (n as f64 * (std::f64::consts::E * m as f64 / n as f64).ln()).sqrt();
    let depth = (n as f64).log2().ceil() as i32;
    let denom: f64 = (0..=depth).map(|s| (n as f64 / 2f64.powi(s)).sqrt()).sum();

    let band = 1.0 - config.delta;
    let mut x = vec![0.0f64; n];
    let mut rounds = Vec::new();
    loop {
        let live: Vec<usize> = (0..n).filter(|&i| x[i].abs() < band).collect();
        if live.is_empty() {
            break;
        }
        let k = live.len();
        let tau = total * (k as f64).sqrt() / denom;
        let sub = a.select_columns(&live)?;
        let rows: Vec<Vec<f64>> = (0..m).map(|j| sub.row(j).to_vec()).collect();
        let x0: Vec<f64> = live.iter().map(|&i| x[i]).collect();
        let problem = EdgeWalkProblem::new(&rows, &vec![tau; m], &x0, params)?;

        let need = k.div_ceil(2);
        let mut attempts = 0;
        let outcome = loop {
            attempts += 1;
            let out = edge_walk(&problem, rng);
            if !out.failed && out.hit_vars.len() >= need {
                break out;
            }
            if attempts == config.max_attempts {
                return Err(Error::RoundFailed {
                    round: rounds.len(),
                    attempts,
                });
            }
        };

        let shift: Vec<f64> = outcome.x.iter().zip(&x0).map(|(a, b)| a - b).collect();
        let moved = sub.mul_vec(&shift)?;
        rounds.push(RoundStats {
            live: k,
            threshold: tau,
            hit_vars: outcome.hit_vars.len(),
            hit_rows: outcome.hit_rows.len(),
            attempts,
            steps: outcome.steps,
            max_row_shift: moved.iter().fold(0.0, |acc, v| acc.max(v.abs())),
        });
        for (&i, &v) in live.iter().zip(&outcome.x) {
            x[i] = v;
        }
    }
    Ok(SpencerOutcome {
        coloring: PartialColoring::new(x)?,
        rounds,
        threshold: total,
        delta: config.delta,
    })
}

/// [`spencer_driver`] followed by sign rounding, reported like the other
/// solvers.
pub fn spencer_color<R: Rng + ?Sized>(
    a: &DenseMatrix,
    config: &SpencerConfig,
    rng: &mut R,
) -> Result<(ColorVector, SolveStats, SpencerOutcome)> {
    let started = Instant::now();
    let outcome = spencer_driver(a, config, rng)?;
    let signs = outcome.signs();
    let stats = SolveStats::finish(a, &signs.to_f64(), started, Vec::new())?;
    Ok((signs, stats, outcome))
}
