use std::time::Instant;

use rand::Rng;

use super::{add_live_product, CallStats, PartialColorResult, SolveStats};
use crate::linalg::{axpy, gaussian_vector, norm2, sym_eigen, DenseMatrix, OrthonormalBasis};
use crate::measures::ColorVector;
use crate::{Error, Result};

const MAX_CONSECUTIVE_FAILURES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomizedParams {
    /// Coordinates with `|xᵢ| ≥ 1 − δ` count as colored.
    pub delta: f64,
    /// The constant in `ε = δ / √(c₀·log₂(k/δ))`.
    pub c0: f64,
}

impl RandomizedParams {
    pub const DEFAULT_C0: f64 = 10.0;

    pub fn new(delta: f64) -> Self {
        Self {
            delta,
            c0: Self::DEFAULT_C0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if !(self.c0 > 0.0 && self.c0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "c0 must be positive, got {}",
                self.c0
            )));
        }
        Ok(())
    }
}

/// Step length `ε = δ/√(c₀·log₂(k/δ))` and step budget `T = ⌈160/ε²⌉` for `k`
/// live coordinates.
pub fn step_schedule(k: usize, delta: f64, c0: f64) -> (f64, u64) {
    let eps = delta / (c0 * (k as f64 / delta).log2()).sqrt();
    let steps = (160.0 / (eps * eps)).ceil() as u64;
    (eps, steps)
}

/// How one randomized partial-coloring attempt ended.
#[derive(Debug, Clone)]
pub enum RandomizedAttempt {
    Success(PartialColorResult),
    /// All `T` steps ran without `⌈k/2⌉` coordinates reaching the band.
    Aborted { steps: u64 },
    /// Enough coordinates were colored but one left the cube.
    Overshoot { max_abs: f64 },
}

impl RandomizedAttempt {
    pub fn is_success(&self) -> bool {
        matches!(self, RandomizedAttempt::Success(_))
    }
}

/// Gaussian-walk partial coloring.
///
/// Live coordinates are those with `|xᵢ| < 1 − δ`; on `k` of them, runs up to
/// `T` steps of `ε·v`, where `v` is a standard Gaussian in a
/// `max(1, ⌊k/4⌋)`-dimensional random subspace orthogonal to the top `⌊k/4⌋`
/// eigenvectors of `CᵀC` and to every coordinate already in the band. The
/// subspace is redrawn each time a coordinate enters the band. Succeeds when
/// `⌈k/2⌉` live coordinates reach the band and no coordinate left `[-1, 1]`.
pub fn partial_color_randomized<R: Rng + ?Sized>(
    a: &DenseMatrix,
    x: &[f64],
    params: RandomizedParams,
    rng: &mut R,
) -> Result<RandomizedAttempt> {
    params.validate()?;
    a.check_cols(x.len())?;
    let band = 1.0 - params.delta;
    let live: Vec<usize> = (0..x.len()).filter(|&i| x[i].abs() < band).collect();
    let k = live.len();
    if k == 0 {
        return Err(Error::NoLiveCoordinates);
    }

    let c = a.select_columns(&live)?;
    let eig = sym_eigen(&c.gram())?;
    let excluded = k / 4;
    let sample_dim = excluded.max(1);
    let (eps, steps) = step_schedule(k, params.delta, params.c0);

    let mut constraints = OrthonormalBasis::new(k);
    for i in 0..excluded {
        constraints.add(eig.vector(i))?;
    }

    let mut values: Vec<f64> = live.iter().map(|&i| x[i]).collect();
    let mut hit = vec![false; k];
    let mut hit_count = 0;
    let need = k.div_ceil(2);
    let mut subspace = random_subspace(&constraints, sample_dim, rng)?;
    let mut v = vec![0.0; k];

    for step in 1..=steps {
        v.iter_mut().for_each(|e| *e = 0.0);
        let g = gaussian_vector(rng, subspace.len());
        for (gi, q) in g.iter().zip(&subspace) {
            axpy(*gi, q, &mut v);
        }
        let mut changed = false;
        for j in 0..k {
            if hit[j] {
                continue;
            }
            values[j] += eps * v[j];
            if values[j].abs() >= band {
                hit[j] = true;
                hit_count += 1;
                constraints.add_coordinate(j)?;
                changed = true;
            }
        }
        if hit_count >= need {
            let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if max_abs > 1.0 {
                return Ok(RandomizedAttempt::Overshoot { max_abs });
            }
            let gamma = values.iter().zip(&live).map(|(v, &i)| v - x[i]).collect();
            return Ok(RandomizedAttempt::Success(PartialColorResult {
                gamma,
                values,
                iterations: step as usize,
                frozen_count: hit_count,
                k,
                lambda_cap: eig.values()[excluded],
                audit: None,
            }));
        }
        if changed {
            subspace = random_subspace(&constraints, sample_dim, rng)?;
        }
    }
    Ok(RandomizedAttempt::Aborted { steps })
}

/// `dim` orthonormal vectors spanning a uniformly random subspace of the
/// orthogonal complement of `constraints`.
fn random_subspace<R: Rng + ?Sized>(
    constraints: &OrthonormalBasis,
    dim: usize,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    let mut extended = constraints.clone();
    let start = extended.len();
    let mut attempts = 0;
    while extended.len() < start + dim {
        if extended.is_full() {
            return Err(Error::FullBasis);
        }
        attempts += 1;
        if attempts > crate::linalg::SAMPLE_RETRIES * dim {
            return Err(Error::ExhaustedRetries { attempts });
        }
        let y = gaussian_vector(rng, extended.dim());
        extended.add(&y)?;
    }
    Ok((start..extended.len()).map(|i| extended.vector(i).to_vec()).collect())
}

/// The randomized driver: `δ = 1/n`, failed attempts are discarded and
/// retried, and the final point is rounded to the nearest ±1 (zero → +1).
pub fn l2_minimize_randomized<R: Rng + ?Sized>(
    a: &DenseMatrix,
    c0: f64,
    rng: &mut R,
) -> Result<(ColorVector, SolveStats)> {
    let n = a.cols();
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "randomized coloring needs n >= 4, got {n}"
        )));
    }
    let started = Instant::now();
    let params = RandomizedParams {
        delta: 1.0 / n as f64,
        c0,
    };
    let band = 1.0 - params.delta;
    let mut x = vec![0.0f64; n];
    let mut ax = vec![0.0; a.rows()];
    let mut calls = Vec::new();

    loop {
        let live: Vec<usize> = (0..n).filter(|&i| x[i].abs() < band).collect();
        if live.is_empty() {
            break;
        }
        let mut failures = 0;
        let result = loop {
            match partial_color_randomized(a, &x, params, rng)? {
                RandomizedAttempt::Success(r) => break r,
                _ => {
                    failures += 1;
                    if failures >= MAX_CONSECUTIVE_FAILURES {
                        return Err(Error::RetryLimit { attempts: failures });
                    }
                }
            }
        };
        let before = norm2(&ax).powi(2);
        add_live_product(a, &live, &result.gamma, &mut ax);
        for (&i, &v) in live.iter().zip(&result.values) {
            x[i] = v;
        }
        calls.push(CallStats {
            live_before: result.k,
            live_after: x.iter().filter(|v| v.abs() < band).count(),
            iterations: result.iterations,
            increase: norm2(&ax).powi(2) - before,
            cap: result.increase_cap(),
            failed_attempts: failures,
        });
    }

    let coloring = round_to_signs(&x);
    let stats = SolveStats::finish(a, &coloring.to_f64(), started, calls)?;
    Ok((coloring, stats))
}

/// Nearest of ±1 per coordinate; ties at zero go to `+1`.
pub(crate) fn round_to_signs(x: &[f64]) -> ColorVector {
    ColorVector::from_signs(x)
}
