//! Discrepancy of a given coloring, and exact `disc` / `herdisc` by exhaustive
//! enumeration for tiny matrices.

use serde::{Deserialize, Serialize};

use crate::linalg::DenseMatrix;
use crate::{Error, Result};

/// Largest `n` accepted by [`disc_exact`] (2ⁿ⁻¹ colorings).
pub const DISC_EXACT_MAX_N: usize = 24;
/// Largest `n` accepted by [`herdisc_exact`] (3ⁿ/2 colorings in total).
pub const HERDISC_EXACT_MAX_N: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormKind {
    LInfinity,
    L2,
}

impl NormKind {
    /// The discrepancy of the row sums `ax` of an `m`-row matrix.
    pub(crate) fn of(self, ax: &[f64]) -> f64 {
        match self {
            NormKind::LInfinity => ax.iter().fold(0.0, |m, v| m.max(v.abs())),
            NormKind::L2 => (ax.iter().map(|v| v * v).sum::<f64>() / ax.len() as f64).sqrt(),
        }
    }
}

/// A full ±1 coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorVector(Vec<i8>);

impl ColorVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(pos) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter(format!(
                "coloring entry {pos} is {}, expected ±1",
                signs[pos]
            )));
        }
        Ok(Self(signs))
    }

    /// Signs of `x`, with zero mapped to `+1`.
    pub fn from_signs(x: &[f64]) -> Self {
        Self(x.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&s| f64::from(s)).collect()
    }
}

/// `‖Ax‖_∞`.
pub fn disc_inf(a: &DenseMatrix, x: &[f64]) -> Result<f64> {
    Ok(NormKind::LInfinity.of(&a.mul_vec(x)?))
}

/// `‖Ax‖₂ / √m`.
pub fn disc_l2(a: &DenseMatrix, x: &[f64]) -> Result<f64> {
    Ok(NormKind::L2.of(&a.mul_vec(x)?))
}

pub fn disc(a: &DenseMatrix, x: &[f64], norm: NormKind) -> Result<f64> {
    Ok(norm.of(&a.mul_vec(x)?))
}

/// Exact `min_x disc(A, x)` over all ±1 colorings, with a minimizing witness.
///
/// `x₁ = +1` is fixed (the objective is invariant under `x → −x`). Among equal
/// minima the lexicographically smallest coloring wins, with `−1 < +1`.
pub fn disc_exact(a: &DenseMatrix, norm: NormKind) -> Result<(f64, ColorVector)> {
    disc_exact_capped(a, norm, DISC_EXACT_MAX_N)
}

pub fn disc_exact_capped(
    a: &DenseMatrix,
    norm: NormKind,
    max_n: usize,
) -> Result<(f64, ColorVector)> {
    let n = a.cols();
    if n > max_n {
        return Err(Error::TooLarge { n, max: max_n });
    }
    let columns = ColumnSet::new(a);
    let idx: Vec<usize> = (0..n).collect();
    let (value, signs) = columns.min_disc(&idx, norm, true);
    Ok((value, ColorVector(signs)))
}

/// Exact hereditary discrepancy: the largest [`disc_exact`] over all nonempty
/// column subsets. The ℓ₂ normalization stays `1/√m` for every subset.
pub fn herdisc_exact(a: &DenseMatrix, norm: NormKind) -> Result<f64> {
    herdisc_exact_capped(a, norm, HERDISC_EXACT_MAX_N)
}

pub fn herdisc_exact_capped(a: &DenseMatrix, norm: NormKind, max_n: usize) -> Result<f64> {
    let n = a.cols();
    if n > max_n || n >= usize::BITS as usize {
        return Err(Error::TooLarge { n, max: max_n });
    }
    let columns = ColumnSet::new(a);
    let mut best = 0.0f64;
    let mut idx = Vec::with_capacity(n);
    for mask in 1usize..(1 << n) {
        idx.clear();
        idx.extend((0..n).filter(|j| mask >> j & 1 == 1));
        let (value, _) = columns.min_disc(&idx, norm, false);
        best = best.max(value);
    }
    Ok(best)
}

/// Column-major copy of `A` for O(m) Gray-code updates.
struct ColumnSet {
    m: usize,
    cols: Vec<Vec<f64>>,
}

impl ColumnSet {
    fn new(a: &DenseMatrix) -> Self {
        Self {
            m: a.rows(),
            cols: (0..a.cols()).map(|j| a.column(j)).collect(),
        }
    }

    /// Minimum over colorings of the columns `idx` (first fixed to `+1`).
    ///
    /// Enumerates the remaining signs in reflected Gray-code order starting
    /// from all `−1`. With `want_witness`, ties within `1e-12` relative are
    /// resolved to the lexicographically smaller coloring.
    fn min_disc(&self, idx: &[usize], norm: NormKind, want_witness: bool) -> (f64, Vec<i8>) {
        let k = idx.len();
        let mut signs: Vec<i8> = vec![-1; k];
        signs[0] = 1;
        let mut ax = vec![0.0; self.m];
        for (pos, &j) in idx.iter().enumerate() {
            let s = f64::from(signs[pos]);
            for (acc, v) in ax.iter_mut().zip(&self.cols[j]) {
                *acc += s * v;
            }
        }
        let mut best = norm.of(&ax);
        let mut best_signs = signs.clone();
        let free = k - 1;
        for step in 1u64..(1u64 << free) {
            let bit = step.trailing_zeros() as usize;
            let pos = 1 + bit;
            signs[pos] = -signs[pos];
            let delta = 2.0 * f64::from(signs[pos]);
            for (acc, v) in ax.iter_mut().zip(&self.cols[idx[pos]]) {
                *acc += delta * v;
            }
            let value = norm.of(&ax);
            let tol = 1e-12 * (1.0 + best);
            if value < best - tol {
                best = value;
                if want_witness {
                    best_signs.copy_from_slice(&signs);
                }
            } else if want_witness && value <= best + tol && signs < best_signs {
                best = best.min(value);
                best_signs.copy_from_slice(&signs);
            }
        }
        (best, best_signs)
    }
}
