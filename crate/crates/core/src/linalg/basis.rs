use rand::Rng;

use super::{axpy, dot, gaussian_vector, norm2};
use crate::{Error, Result};

/// Residuals at or below this fraction of `‖y‖₂` count as linearly dependent.
const DEPENDENCE_TOL: f64 = 1e-10;
/// Projected Gaussian draws shorter than this are rejected and redrawn.
const MIN_SAMPLE_NORM: f64 = 1e-6;
pub const SAMPLE_RETRIES: usize = 64;

/// An incrementally grown set of orthonormal vectors in `ℝ^dim`.
///
/// Vectors are only ever appended. Every projection runs classical
/// Gram–Schmidt at least twice, with a further pass whenever a pass removed
/// more than 30% of the remaining norm.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    dim: usize,
    data: Vec<f64>,
}

impl OrthonormalBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            data: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.len() >= self.dim
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim.max(1))
    }

    /// Appends the normalized residual of `y` against the basis.
    ///
    /// Returns `Ok(false)` and leaves the basis untouched when `y` is
    /// (numerically) in the span already.
    pub fn add(&mut self, y: &[f64]) -> Result<bool> {
        self.check_dim(y.len())?;
        let y_norm = norm2(y);
        if y_norm == 0.0 || self.is_full() {
            return Ok(false);
        }
        let mut r = y.to_vec();
        let r_norm = self.orthogonalize(&mut r);
        if r_norm <= DEPENDENCE_TOL * y_norm {
            return Ok(false);
        }
        let inv = 1.0 / r_norm;
        r.iter_mut().for_each(|v| *v *= inv);
        self.data.extend_from_slice(&r);
        Ok(true)
    }

    /// Adds the coordinate vector `e_i`.
    pub fn add_coordinate(&mut self, i: usize) -> Result<bool> {
        if i >= self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: i + 1,
            });
        }
        let mut e = vec![0.0; self.dim];
        e[i] = 1.0;
        self.add(&e)
    }

    /// `y − Σ ⟨y, vᵢ⟩ vᵢ`, re-orthogonalized.
    pub fn project_complement(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(y.len())?;
        let mut r = y.to_vec();
        self.orthogonalize(&mut r);
        Ok(r)
    }

    /// Removes the basis components from `r` in place; returns `‖r‖₂` after.
    pub(crate) fn orthogonalize(&self, r: &mut [f64]) -> f64 {
        let mut before = norm2(r);
        if self.is_empty() {
            return before;
        }
        let mut coeffs = vec![0.0; self.len()];
        for pass in 0..4 {
            for (c, v) in coeffs.iter_mut().zip(self.iter()) {
                *c = dot(v, r);
            }
            for (&c, v) in coeffs.iter().zip(self.iter()) {
                axpy(-c, v, r);
            }
            let after = norm2(r);
            if pass >= 1 && after >= 0.7 * before {
                return after;
            }
            before = after;
        }
        before
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: len,
            });
        }
        Ok(())
    }
}

/// A random unit vector orthogonal to every vector in `basis`.
///
/// Draws a standard Gaussian, projects it onto the complement and normalizes.
/// Draws whose projection is shorter than `1e-6` are discarded; after
/// [`SAMPLE_RETRIES`] such draws the basis is treated as degenerate.
pub fn sample_unit_in_complement<R: Rng + ?Sized>(
    basis: &OrthonormalBasis,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if basis.is_full() {
        return Err(Error::FullBasis);
    }
    for _ in 0..SAMPLE_RETRIES {
        let mut y = gaussian_vector(rng, basis.dim());
        let n = basis.orthogonalize(&mut y);
        if n < MIN_SAMPLE_NORM {
            continue;
        }
        let inv = 1.0 / n;
        y.iter_mut().for_each(|v| *v *= inv);
        return Ok(y);
    }
    Err(Error::ExhaustedRetries {
        attempts: SAMPLE_RETRIES,
    })
}
