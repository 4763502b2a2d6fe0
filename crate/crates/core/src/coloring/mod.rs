//! ±1 colorings with small ℓ₂-discrepancy.
//!
//! [`l2_minimize`] repeatedly calls [`partial_color`], each call freezing at
//! least half of the remaining live coordinates at ±1 while moving only in
//! directions orthogonal to the top quarter of the eigenvectors of `CᵀC`
//! (`C` = live columns of `A`). Each call raises `‖Ax‖₂²` by at most
//! `4·k·λ_{⌊k/4⌋+1}`, which ties the final discrepancy to `herdisc₂(A)`.
//!
//! [`l2_minimize_randomized`] is the older Gaussian-walk variant, and
//! [`sample`] / [`sample_many`] are the random baselines.

mod baseline;
mod partial;
mod randomized;

use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use baseline::{sample, sample_many, Budget};
pub use partial::{partial_color, partial_color_audited, StepAudit};
pub use randomized::{
    l2_minimize_randomized, partial_color_randomized, step_schedule, RandomizedAttempt,
    RandomizedParams,
};

use crate::linalg::{norm2, DenseMatrix};
use crate::measures::{ColorVector, NormKind};
use crate::{Error, Result};

/// A point of `[-1, 1]ⁿ`. Coordinates with `|xᵢ| < 1` are live; the others
/// are frozen and hold exactly `±1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialColoring {
    x: Vec<f64>,
    live: Vec<usize>,
}

impl PartialColoring {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if let Some(i) = x.iter().position(|v| v.is_nan() || v.abs() > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "coordinate {i} = {} lies outside [-1, 1]",
                x[i]
            )));
        }
        let live = live_below(&x, 1.0);
        Ok(Self { x, live })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            x: vec![0.0; n],
            live: (0..n).collect(),
        }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn live_indices(&self) -> &[usize] {
        &self.live
    }

    pub fn live_count(&self) -> usize {
        self.live.len()
    }

    pub fn is_complete(&self) -> bool {
        self.live.is_empty()
    }

    /// Writes `x ⊕ γ` back, taking the snapped coordinates from `result`.
    pub fn apply(&mut self, result: &PartialColorResult) -> Result<()> {
        self.write_live(&result.values)
    }

    pub(crate) fn write_live(&mut self, values: &[f64]) -> Result<()> {
        if values.len() != self.live.len() {
            return Err(Error::DimensionMismatch {
                expected: self.live.len(),
                found: values.len(),
            });
        }
        for (&i, &v) in self.live.iter().zip(values) {
            self.x[i] = v.clamp(-1.0, 1.0);
        }
        self.live = live_below(&self.x, 1.0);
        Ok(())
    }

    /// The ±1 coloring, once no coordinate is live.
    pub fn to_color_vector(&self) -> Option<ColorVector> {
        self.is_complete().then(|| ColorVector::from_signs(&self.x))
    }
}

fn live_below(x: &[f64], bound: f64) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| v.abs() < bound)
        .map(|(i, _)| i)
        .collect()
}

/// Output of one partial-coloring call on `k` live coordinates.
#[derive(Debug, Clone)]
pub struct PartialColorResult {
    /// Displacement of each live coordinate, in live order.
    pub gamma: Vec<f64>,
    /// `x_live(i) + γᵢ`, with frozen coordinates snapped to exactly ±1.
    pub values: Vec<f64>,
    pub iterations: usize,
    pub frozen_count: usize,
    /// Number of live coordinates on entry.
    pub k: usize,
    /// `λ_{⌊k/4⌋+1}` of `CᵀC`, the largest Rayleigh quotient a step can have.
    pub lambda_cap: f64,
    pub audit: Option<StepAudit>,
}

impl PartialColorResult {
    /// Upper bound `4·k·λ_{⌊k/4⌋+1}` on the increase of `‖Ax‖₂²`.
    pub fn increase_cap(&self) -> f64 {
        4.0 * self.k as f64 * self.lambda_cap
    }
}

/// Per-call bookkeeping recorded by the drivers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CallStats {
    pub live_before: usize,
    pub live_after: usize,
    pub iterations: usize,
    /// `‖A(x ⊕ γ)‖₂² − ‖Ax‖₂²`
    pub increase: f64,
    /// `4·k·λ_{⌊k/4⌋+1}`
    pub cap: f64,
    /// Attempts discarded before this call succeeded (randomized variant).
    pub failed_attempts: usize,
}

#[derive(Debug, Clone)]
pub struct SolveStats {
    pub disc2: f64,
    pub disc_inf: f64,
    pub wall_time: Duration,
    pub partial_color_calls: usize,
    pub calls: Vec<CallStats>,
    /// Colorings drawn by the sampling baselines.
    pub draws: usize,
}

impl SolveStats {
    pub(crate) fn finish(a: &DenseMatrix, x: &[f64], started: Instant, calls: Vec<CallStats>) -> Result<Self> {
        let ax = a.mul_vec(x)?;
        Ok(Self {
            disc2: NormKind::L2.of(&ax),
            disc_inf: NormKind::LInfinity.of(&ax),
            wall_time: started.elapsed(),
            partial_color_calls: calls.len(),
            calls,
            draws: 0,
        })
    }

    pub fn per_call_increase(&self) -> Vec<f64> {
        self.calls.iter().map(|c| c.increase).collect()
    }

    pub fn disc(&self, norm: NormKind) -> f64 {
        match norm {
            NormKind::L2 => self.disc2,
            NormKind::LInfinity => self.disc_inf,
        }
    }
}

/// `ax += A (0 ⊕ γ)` for the given live columns.
pub(crate) fn add_live_product(a: &DenseMatrix, live: &[usize], gamma: &[f64], ax: &mut [f64]) {
    for (i, acc) in ax.iter_mut().enumerate() {
        let row = a.row(i);
        *acc += live.iter().zip(gamma).map(|(&j, g)| row[j] * g).sum::<f64>();
    }
}

/// Low ℓ₂-discrepancy coloring by repeated eigenvector-avoiding partial
/// coloring, starting from `x = 0`. `Ax` is maintained incrementally across
/// calls.
pub fn l2_minimize<R: Rng + ?Sized>(a: &DenseMatrix, rng: &mut R) -> Result<(ColorVector, SolveStats)> {
    let started = Instant::now();
    let mut state = PartialColoring::zeros(a.cols());
    let mut ax = vec![0.0; a.rows()];
    let mut calls = Vec::new();
    while !state.is_complete() {
        let before = norm2(&ax).powi(2);
        let result = partial_color(a, &state, &ax, rng)?;
        add_live_product(a, state.live_indices(), &result.gamma, &mut ax);
        state.apply(&result)?;
        calls.push(CallStats {
            live_before: result.k,
            live_after: state.live_count(),
            iterations: result.iterations,
            increase: norm2(&ax).powi(2) - before,
            cap: result.increase_cap(),
            failed_attempts: 0,
        });
    }
    let coloring = state
        .to_color_vector()
        .expect("loop exits only when every coordinate is frozen");
    let stats = SolveStats::finish(a, state.x(), started, calls)?;
    Ok((coloring, stats))
}
